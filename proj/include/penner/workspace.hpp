#pragma once

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "penner/coords.hpp"
#include "penner/scalar.hpp"
#include "penner/surface.hpp"

namespace penner {

/// Single-file session state for the CLI: a triangulation with coordinates,
/// sampling metadata and the replayable command history.
template <class S>
struct Workspace {
    Triangulation tri;
    SignedCoords<S> coords;
    std::uint64_t seed = 0;
    double tolerance = kDefaultTolerance;
    nlohmann::json history = nlohmann::json::array();
};

using AnyWorkspace = std::variant<Workspace<Rational>, Workspace<double>>;

template <class S>
inline nlohmann::json workspace_to_json(const Workspace<S>& ws) {
    return nlohmann::json{{"mode", ScalarTraits<S>::mode_name()},
                          {"seed", ws.seed},
                          {"tolerance", ws.tolerance},
                          {"surface", ws.tri.to_json()},
                          {"coords", coords_to_json(ws.coords)},
                          {"history", ws.history}};
}

inline nlohmann::json any_workspace_to_json(const AnyWorkspace& ws) {
    return std::visit([](const auto& w) { return workspace_to_json(w); }, ws);
}

inline AnyWorkspace workspace_from_json(const nlohmann::json& j) {
    try {
        const auto mode = j.at("mode").get<std::string>();
        Triangulation tri = Triangulation::from_json(j.at("surface"));
        if (mode == ScalarTraits<Rational>::mode_name()) {
            auto coords = coords_from_json<Rational>(tri, j.at("coords"));
            Workspace<Rational> ws{std::move(tri), std::move(coords)};
            ws.seed = j.value("seed", std::uint64_t(0));
            ws.tolerance = j.value("tolerance", kDefaultTolerance);
            ws.history = j.value("history", nlohmann::json::array());
            return ws;
        }
        if (mode == ScalarTraits<double>::mode_name()) {
            auto coords = coords_from_json<double>(tri, j.at("coords"));
            Workspace<double> ws{std::move(tri), std::move(coords)};
            ws.seed = j.value("seed", std::uint64_t(0));
            ws.tolerance = j.value("tolerance", kDefaultTolerance);
            ws.history = j.value("history", nlohmann::json::array());
            return ws;
        }
        throw IoError("unknown mode '" + mode + "'");
    } catch (const IoError&) {
        throw;
    } catch (const std::exception& e) {
        throw IoError(std::string("bad workspace JSON: ") + e.what());
    }
}

inline nlohmann::json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw IoError("cannot parse '" + path + "': " + e.what());
    }
    return j;
}

inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << text;
    if (!out) throw IoError("write to '" + path + "' failed");
}

inline void write_json_file(const std::string& path, const nlohmann::json& j) {
    write_text_file(path, j.dump(2) + "\n");
}

inline AnyWorkspace load_workspace(const std::string& path) {
    return workspace_from_json(read_json_file(path));
}

inline void save_workspace(const AnyWorkspace& ws, const std::string& path) {
    write_json_file(path, any_workspace_to_json(ws));
}

namespace detail {

template <class S>
inline Workspace<S> replayed_step(Workspace<S> ws, const nlohmann::json& entry) {
    const auto cmd = entry.at("cmd").get<std::string>();
    if (cmd == "flip") {
        for (const auto& je : entry.at("edges")) {
            auto out = flip(ws.tri, ws.coords, je.get<EdgeId>(), ws.tolerance);
            ws.tri = std::move(out.tri);
            ws.coords = std::move(out.coords);
        }
    } else if (cmd == "scale") {
        PunctureScaling<S> h;
        for (const auto& jf : entry.at("factors")) {
            h.h.push_back(ScalarTraits<S>::from_string(jf.template get<std::string>()));
        }
        ws.coords = scale_action(ws.tri, ws.coords, h);
    } else {
        throw IoError("history contains unknown command '" + cmd + "'");
    }
    return ws;
}

} // namespace detail

/// Rebuilds the workspace state from its own history. The first entry must
/// be a "new" or "import" record; the rest replay in order. Used to check
/// the replayability invariant.
inline AnyWorkspace replay_history(const nlohmann::json& history) {
    if (!history.is_array() || history.empty()) {
        throw IoError("history is empty; nothing to replay");
    }
    const auto& head = history.front();
    const auto cmd = head.at("cmd").get<std::string>();
    AnyWorkspace ws = [&]() -> AnyWorkspace {
        std::string mode = head.value("mode", std::string(ScalarTraits<Rational>::mode_name()));
        Triangulation tri = cmd == "new"
                                ? Triangulation::canonical(head.at("g").get<int>(),
                                                           head.at("s").get<int>())
                                : Triangulation::from_json(head.at("surface"));
        if (cmd != "new" && cmd != "import") {
            throw IoError("history must start with a 'new' or 'import' record");
        }
        if (mode == ScalarTraits<double>::mode_name()) {
            auto unit = SignedCoords<double>::unit(tri);
            Workspace<double> w{std::move(tri), std::move(unit)};
            if (cmd == "import" && head.contains("coords")) {
                w.coords = coords_from_json<double>(w.tri, head.at("coords"));
            }
            return w;
        }
        auto unit = SignedCoords<Rational>::unit(tri);
        Workspace<Rational> w{std::move(tri), std::move(unit)};
        if (cmd == "import" && head.contains("coords")) {
            w.coords = coords_from_json<Rational>(w.tri, head.at("coords"));
        }
        return w;
    }();
    for (std::size_t i = 1; i < history.size(); ++i) {
        ws = std::visit(
            [&](auto w) -> AnyWorkspace { return detail::replayed_step(std::move(w), history[i]); },
            std::move(ws));
    }
    std::visit([&](auto& w) { w.history = history; }, ws);
    return ws;
}

} // namespace penner
