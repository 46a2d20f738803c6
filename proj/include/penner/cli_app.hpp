#pragma once

#include <algorithm>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "penner/catalan.hpp"
#include "penner/coords.hpp"
#include "penner/holonomy.hpp"
#include "penner/scalar.hpp"
#include "penner/search.hpp"
#include "penner/surface.hpp"
#include "penner/workspace.hpp"

namespace penner::cli {

// Exit codes are part of the scripting contract.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitDegenerate = 2;
inline constexpr int kExitInvalidChart = 3;
inline constexpr int kExitIo = 4;

namespace detail {

inline std::string sign_str(int s) { return s > 0 ? "+1" : "-1"; }

template <class S>
void do_flips(Workspace<S>& ws, const std::vector<EdgeId>& edges, std::ostream& out) {
    for (std::size_t i = 0; i < edges.size(); ++i) {
        try {
            auto step = flip(ws.tri, ws.coords, edges[i], ws.tolerance);
            out << "flip edge " << edges[i] << ": S = " << ScalarTraits<S>::to_string(step.rhs)
                << ", sign = " << sign_str(step.sign)
                << ", f' = " << ScalarTraits<S>::to_string(step.coords.f[edges[i]]) << "\n";
            ws.tri = std::move(step.tri);
            ws.coords = std::move(step.coords);
        } catch (const DegenerateFlip& e) {
            throw DegenerateFlip(std::string(e.what()), e.edge, static_cast<int>(i));
        }
    }
    ws.history.push_back(nlohmann::json{{"cmd", "flip"}, {"edges", edges}});
}

template <class S>
void do_scale(Workspace<S>& ws, const std::vector<std::string>& factors) {
    if (static_cast<int>(factors.size()) != ws.tri.punctures()) {
        throw std::invalid_argument("expected one factor per puncture (" +
                                    std::to_string(ws.tri.punctures()) + ")");
    }
    PunctureScaling<S> h;
    for (const auto& text : factors) h.h.push_back(ScalarTraits<S>::from_string(text));
    ws.coords = scale_action(ws.tri, ws.coords, h);
    ws.history.push_back(nlohmann::json{{"cmd", "scale"}, {"factors", factors}});
}

template <class S>
void do_report(const Workspace<S>& ws, std::ostream& out) {
    const Triangulation& tri = ws.tri;
    out << "mode: " << ScalarTraits<S>::mode_name() << "\n";
    out << "surface: genus " << tri.genus() << ", punctures " << tri.punctures() << " (kappa "
        << tri.kappa() << "): " << tri.num_faces() << " faces, " << tri.num_edges()
        << " edges, " << tri.num_corners() << " corners\n";
    for (EdgeId e = 0; e < tri.num_edges(); ++e) {
        const auto ends = tri.edge_endpoints(e);
        out << "f[" << e << "] = " << ScalarTraits<S>::to_string(ws.coords.f[e])
            << "   (punctures " << ends[0] << "," << ends[1] << ")\n";
    }
    for (FaceId t = 0; t < tri.num_faces(); ++t) {
        out << "eps[" << t << "] = " << sign_str(ws.coords.eps[t]) << "\n";
    }
    bool valid = true;
    for (PunctureId p = 0; p < tri.punctures(); ++p) {
        S sum(0), scale(0);
        for (const Corner& cor : tri.corners_at(p)) {
            const S term = corner_term(ws.coords, cor);
            sum += term;
            scale += abs_of(term);
        }
        const bool parabolic = !negligible(sum, scale, ws.tolerance);
        valid = valid && parabolic;
        out << "phi[" << p << "] = " << ScalarTraits<S>::to_string(sum) << "   holonomy (1, "
            << ScalarTraits<S>::to_string(sum) << ") "
            << (parabolic ? "parabolic" : "identity, not parabolic") << "\n";
    }
    out << "phi_total = " << ScalarTraits<S>::to_string(phi_total(tri, ws.coords)) << "\n";
    out << "valid chart point: " << (valid ? "yes" : "no") << "\n";
    out << "component index k = " << component_index(ws.coords) << "\n";
}

template <class S>
void do_holonomy(const Workspace<S>& ws, HalfEdgeId base, const std::string& out_path,
                 std::ostream& out) {
    auto conn = build_connection(ws.tri, ws.coords, ws.tolerance);
    bool hexagons_ok = true;
    for (FaceId f = 0; f < ws.tri.num_faces(); ++f) {
        hexagons_ok = hexagons_ok &&
                      path_holonomy(conn, face_hexagon_walk(ws.tri, f)).is_identity(ws.tolerance);
    }
    out << "hexagon holonomies trivial: " << (hexagons_ok ? "yes" : "NO") << "\n";
    for (PunctureId p = 0; p < ws.tri.punctures(); ++p) {
        const auto b = puncture_holonomy(conn, p);
        out << "puncture holonomy [" << p << "] = (" << ScalarTraits<S>::to_string(b.u) << ", "
            << ScalarTraits<S>::to_string(b.v) << ")\n";
    }
    const auto rep = pi1_representation(conn, base);
    out << "pi1 generators: " << rep.generators.size() << " cycles, hexagon rank "
        << rep.hexagon_rank << ", independent rank " << rep.independent_rank << "\n";
    for (std::size_t i = 0; i < rep.generators.size(); ++i) {
        out << "gen " << i << ": " << walk_to_string(rep.generators[i].word) << " -> "
            << matrix_to_json(rep.generators[i].matrix).dump() << "\n";
    }
    if (!out_path.empty()) {
        write_json_file(out_path, connection_to_json(conn));
        out << "connection written to " << out_path << "\n";
    }
}

template <class S>
void do_route(const Workspace<S>& ws, const Triangulation& target, int depth,
              const std::string& out_path, std::ostream& out) {
    const int effective_depth = depth > 0 ? depth : 2 * ws.tri.num_edges();
    auto route = find_route(ws.tri, ws.coords, target, effective_depth, ws.tolerance);
    if (route.status == RouteStatus::found) {
        out << "route: found in " << route.steps.size() << " flips (explored " << route.explored
            << " states)\n";
        for (std::size_t i = 0; i < route.steps.size(); ++i) {
            out << "step " << i << ": edge " << route.steps[i].edge << ", S = "
                << ScalarTraits<S>::to_string(route.steps[i].rhs) << ", sign = "
                << sign_str(route.steps[i].sign) << "\n";
        }
    } else {
        out << "route: inconclusive within depth " << effective_depth << " (explored "
            << route.explored << " states)\n";
    }
    if (!out_path.empty()) {
        write_json_file(out_path, route_to_json(route));
        out << "route written to " << out_path << "\n";
    }
}

inline Triangulation load_target_surface(const std::string& path) {
    const auto j = read_json_file(path);
    return Triangulation::from_json(j.contains("surface") ? j.at("surface") : j);
}

} // namespace detail

/// Runs the CLI on an argument vector (program name excluded). All output
/// goes to the supplied streams; the return value is the process exit code.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"signed Penner coordinates on punctured-surface moduli"};
    app.require_subcommand(1);

    // new
    auto* cmd_new = app.add_subcommand("new", "create a workspace with the canonical surface");
    int new_g = 1, new_s = 1;
    std::string new_mode = "rational", new_out = "workspace.json";
    std::uint64_t new_seed = 0;
    double new_tol = kDefaultTolerance;
    cmd_new->add_option("--g", new_g, "genus")->required();
    cmd_new->add_option("--s", new_s, "punctures")->required();
    cmd_new->add_option("--mode", new_mode, "rational|float")
        ->check(CLI::IsMember({"rational", "float"}));
    cmd_new->add_option("--seed", new_seed, "sampling seed stored in the workspace");
    cmd_new->add_option("--tolerance", new_tol, "float-mode zero-test tolerance");
    cmd_new->add_option("--out", new_out, "workspace path");

    // import
    auto* cmd_import = app.add_subcommand("import", "build a workspace from surface/coords JSON");
    std::string imp_surface, imp_coords, imp_mode = "rational", imp_out = "workspace.json";
    cmd_import->add_option("--surface", imp_surface, "surface JSON path")->required();
    cmd_import->add_option("--coords", imp_coords, "coords JSON path (default unit)");
    cmd_import->add_option("--mode", imp_mode, "rational|float (when no coords file)")
        ->check(CLI::IsMember({"rational", "float"}));
    cmd_import->add_option("--out", imp_out, "workspace path");

    // export
    auto* cmd_export = app.add_subcommand("export", "write the raw surface/coords JSON");
    std::string exp_in, exp_surface, exp_coords;
    cmd_export->add_option("--in", exp_in, "workspace path")->required();
    cmd_export->add_option("--surface", exp_surface, "surface JSON output path");
    cmd_export->add_option("--coords", exp_coords, "coords JSON output path");

    // flip
    auto* cmd_flip = app.add_subcommand("flip", "flip edges, updating coordinates");
    std::string flip_in, flip_out;
    std::vector<EdgeId> flip_edges;
    cmd_flip->add_option("--in", flip_in, "workspace path")->required();
    cmd_flip->add_option("--out", flip_out, "output path (default: in place)");
    cmd_flip->add_option("edges", flip_edges, "edge ids to flip, in order")->required();

    // scale
    auto* cmd_scale = app.add_subcommand("scale", "apply the puncture scaling action");
    std::string scale_in, scale_out;
    std::vector<std::string> scale_factors;
    cmd_scale->add_option("--in", scale_in, "workspace path")->required();
    cmd_scale->add_option("--out", scale_out, "output path (default: in place)");
    cmd_scale->add_option("factors", scale_factors, "one positive factor per puncture")
        ->required();

    // report
    auto* cmd_report = app.add_subcommand("report", "print coordinates, phi, validity and k");
    std::string report_in;
    cmd_report->add_option("--in", report_in, "workspace path")->required();

    // holonomy
    auto* cmd_hol = app.add_subcommand("holonomy", "print connection data and pi1 generators");
    std::string hol_in, hol_out;
    HalfEdgeId hol_base = 0;
    cmd_hol->add_option("--in", hol_in, "workspace path")->required();
    cmd_hol->add_option("--base", hol_base, "base vertex (half-edge id)");
    cmd_hol->add_option("--out", hol_out, "connection JSON output path");

    // route
    auto* cmd_route = app.add_subcommand("route", "search a non-degenerate flip route");
    std::string route_in, route_target, route_out;
    int route_depth = 0;
    cmd_route->add_option("--in", route_in, "workspace path")->required();
    cmd_route->add_option("--target", route_target, "target surface or workspace JSON")
        ->required();
    cmd_route->add_option("--depth", route_depth, "depth limit (default 2 * edges)");
    cmd_route->add_option("--out", route_out, "route JSON output path");

    // census
    auto* cmd_census = app.add_subcommand("census", "sign-pattern component census");
    int census_g = 1, census_s = 1, census_trials = 1000, census_max_den = 1000;
    std::uint64_t census_seed = 0;
    std::string census_out, census_mode = "rational";
    double census_tol = kDefaultTolerance;
    cmd_census->add_option("--g", census_g, "genus")->required();
    cmd_census->add_option("--s", census_s, "punctures")->required();
    cmd_census->add_option("--trials", census_trials, "trials per sign-pattern class");
    cmd_census->add_option("--seed", census_seed, "sampling seed");
    cmd_census->add_option("--max-den", census_max_den, "rational sampling denominator bound");
    cmd_census->add_option("--mode", census_mode, "rational|float")
        ->check(CLI::IsMember({"rational", "float"}));
    cmd_census->add_option("--tolerance", census_tol, "float-mode zero-test tolerance");
    cmd_census->add_option("--out", census_out, "CSV output path");

    // catalan
    auto* cmd_catalan = app.add_subcommand("catalan", "enumerate polygon triangulations");
    int catalan_n = 4;
    bool catalan_list = false;
    cmd_catalan->add_option("--n", catalan_n, "polygon vertex count")->required();
    cmd_catalan->add_flag("--list", catalan_list, "print every diagonal set");

    std::reverse(args.begin(), args.end());
    try {
        app.parse(std::move(args));

        if (*cmd_new) {
            const Triangulation tri = Triangulation::canonical(new_g, new_s);
            nlohmann::json head{{"cmd", "new"}, {"g", new_g}, {"s", new_s}, {"mode", new_mode}};
            AnyWorkspace ws = [&]() -> AnyWorkspace {
                if (new_mode == "float") {
                    Workspace<double> w{tri, SignedCoords<double>::unit(tri)};
                    return w;
                }
                Workspace<Rational> w{tri, SignedCoords<Rational>::unit(tri)};
                return w;
            }();
            std::visit(
                [&](auto& w) {
                    w.seed = new_seed;
                    w.tolerance = new_tol;
                    w.history.push_back(head);
                },
                ws);
            save_workspace(ws, new_out);
            out << "workspace: genus " << new_g << ", punctures " << new_s << ", "
                << tri.num_edges() << " edges, " << tri.num_faces()
                << " faces, unit coordinates, all signs +1 -> " << new_out << "\n";
        } else if (*cmd_import) {
            const auto sj = read_json_file(imp_surface);
            Triangulation tri = Triangulation::from_json(sj);
            nlohmann::json head{{"cmd", "import"}, {"surface", tri.to_json()}};
            std::string mode = imp_mode;
            nlohmann::json cj;
            if (!imp_coords.empty()) {
                cj = read_json_file(imp_coords);
                mode = cj.value("mode", imp_mode);
                head["coords"] = cj;
            }
            head["mode"] = mode;
            AnyWorkspace ws = [&]() -> AnyWorkspace {
                if (mode == "float") {
                    auto coords = imp_coords.empty() ? SignedCoords<double>::unit(tri)
                                                     : coords_from_json<double>(tri, cj);
                    Workspace<double> w{std::move(tri), std::move(coords)};
                    return w;
                }
                auto coords = imp_coords.empty() ? SignedCoords<Rational>::unit(tri)
                                                 : coords_from_json<Rational>(tri, cj);
                Workspace<Rational> w{std::move(tri), std::move(coords)};
                return w;
            }();
            std::visit([&](auto& w) { w.history.push_back(head); }, ws);
            save_workspace(ws, imp_out);
            out << "imported workspace -> " << imp_out << "\n";
        } else if (*cmd_export) {
            const AnyWorkspace ws = load_workspace(exp_in);
            std::visit(
                [&](const auto& w) {
                    if (!exp_surface.empty()) write_json_file(exp_surface, w.tri.to_json());
                    if (!exp_coords.empty()) write_json_file(exp_coords, coords_to_json(w.coords));
                    if (exp_surface.empty() && exp_coords.empty()) {
                        out << w.tri.to_json().dump(2) << "\n"
                            << coords_to_json(w.coords).dump(2) << "\n";
                    }
                },
                ws);
        } else if (*cmd_flip) {
            AnyWorkspace ws = load_workspace(flip_in);
            std::visit([&](auto& w) { detail::do_flips(w, flip_edges, out); }, ws);
            save_workspace(ws, flip_out.empty() ? flip_in : flip_out);
        } else if (*cmd_scale) {
            AnyWorkspace ws = load_workspace(scale_in);
            std::visit([&](auto& w) { detail::do_scale(w, scale_factors); }, ws);
            save_workspace(ws, scale_out.empty() ? scale_in : scale_out);
            out << "scaled " << scale_factors.size() << " punctures\n";
        } else if (*cmd_report) {
            const AnyWorkspace ws = load_workspace(report_in);
            std::visit([&](const auto& w) { detail::do_report(w, out); }, ws);
        } else if (*cmd_hol) {
            const AnyWorkspace ws = load_workspace(hol_in);
            std::visit([&](const auto& w) { detail::do_holonomy(w, hol_base, hol_out, out); },
                       ws);
        } else if (*cmd_route) {
            const AnyWorkspace ws = load_workspace(route_in);
            const Triangulation target = detail::load_target_surface(route_target);
            std::visit(
                [&](const auto& w) { detail::do_route(w, target, route_depth, route_out, out); },
                ws);
        } else if (*cmd_census) {
            SampleSpec spec;
            spec.seed = census_seed;
            spec.max_denominator = census_max_den;
            const auto rows = census_mode == "float"
                                  ? component_census<double>(census_g, census_s, spec,
                                                             census_trials, census_tol)
                                  : component_census<Rational>(census_g, census_s, spec,
                                                               census_trials, census_tol);
            const std::string csv = census_csv(rows);
            if (!census_out.empty()) {
                write_text_file(census_out, csv);
                out << "census written to " << census_out << "\n";
            }
            out << csv;
        } else if (*cmd_catalan) {
            const auto sets = enumerate_polygon_triangulations(catalan_n);
            out << "triangulations of the " << catalan_n << "-gon: " << sets.size() << "\n";
            if (catalan_list) {
                for (const auto& diags : sets) {
                    std::string line;
                    for (const auto& [i, j] : diags) {
                        line += "(" + std::to_string(i) + "," + std::to_string(j) + ") ";
                    }
                    out << (line.empty() ? "(no diagonals)" : line) << "\n";
                }
            }
        }
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    } catch (const DegenerateFlip& e) {
        err << "degenerate flip";
        if (e.step >= 0) err << " at step " << e.step;
        err << " (edge " << e.edge << "): " << e.what() << "\n";
        return kExitDegenerate;
    } catch (const InvalidChart& e) {
        err << "invalid chart: " << e.what() << "\n";
        return kExitInvalidChart;
    } catch (const NotParabolic& e) {
        err << "not parabolic: " << e.what() << "\n";
        return kExitInvalidChart;
    } catch (const IdenticallyInvalid& e) {
        err << "identically invalid: " << e.what() << "\n";
        return kExitInvalidChart;
    } catch (const IoError& e) {
        err << "io error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}

inline int run(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run(std::move(args), std::cout, std::cerr);
}

} // namespace penner::cli
