#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "penner/scalar.hpp"
#include "penner/surface.hpp"

namespace penner {

/// Chart datum on a triangulation: a positive scalar per edge and a sign
/// per face. Valid chart points are those where no per-puncture phi
/// vanishes; only those correspond to moduli of flat connections.
template <class S>
struct SignedCoords {
    std::vector<S> f;     // per edge, positive
    std::vector<int> eps; // per face, +1 or -1

    static SignedCoords unit(const Triangulation& tri) {
        return SignedCoords{std::vector<S>(tri.num_edges(), S(1)),
                            std::vector<int>(tri.num_faces(), 1)};
    }
};

/// Positive scaling per puncture; the structure-group action on charts.
template <class S>
struct PunctureScaling {
    std::vector<S> h; // per puncture, positive
};

template <class S>
inline void require_coords_domain(const Triangulation& tri, const SignedCoords<S>& c) {
    if (static_cast<int>(c.f.size()) != tri.num_edges() ||
        static_cast<int>(c.eps.size()) != tri.num_faces()) {
        throw std::invalid_argument("coordinate domain does not match the triangulation");
    }
    for (const auto& v : c.f) {
        if (!(v > 0)) throw std::invalid_argument("edge coordinates must be positive");
    }
    for (int s : c.eps) {
        if (s != 1 && s != -1) throw std::invalid_argument("face signs must be +1 or -1");
    }
}

/// Signed corner term eps(T_c) * f(O_c) / (f(A_c) f(B_c)).
template <class S>
inline S corner_term(const SignedCoords<S>& c, const Corner& cor) {
    return c.eps[cor.face] * c.f[cor.opposite] / (c.f[cor.flank_a] * c.f[cor.flank_b]);
}

/// Sum of the signed corner terms around puncture p.
template <class S>
inline S phi_puncture(const Triangulation& tri, const SignedCoords<S>& c, PunctureId p) {
    S sum(0);
    for (const Corner& cor : tri.corners_at(p)) {
        sum += corner_term(c, cor);
    }
    return sum;
}

/// Product of phi_puncture over all punctures.
template <class S>
inline S phi_total(const Triangulation& tri, const SignedCoords<S>& c) {
    S prod(1);
    for (PunctureId p = 0; p < tri.punctures(); ++p) {
        prod *= phi_puncture(tri, c, p);
    }
    return prod;
}

/// True iff every per-puncture phi is nonzero. Exact mode is literal; float
/// mode compares |phi_P| against tol * (sum of |terms|).
template <class S>
inline bool is_valid_chart_point(const Triangulation& tri, const SignedCoords<S>& c,
                                 double tol = kDefaultTolerance) {
    for (PunctureId p = 0; p < tri.punctures(); ++p) {
        S sum(0), scale(0);
        for (const Corner& cor : tri.corners_at(p)) {
            const S term = corner_term(c, cor);
            sum += term;
            scale += abs_of(term);
        }
        if (negligible(sum, scale, tol)) return false;
    }
    return true;
}

/// Component index k = (1/2) sum of face signs; a flip invariant in
/// [-kappa, kappa].
template <class S>
inline int component_index(const SignedCoords<S>& c) {
    int sum = 0;
    for (int s : c.eps) sum += s;
    return sum / 2;
}

/// Structure-group action: f(e) picks up the product of the scalings at the
/// endpoints of e (squared for a loop); signs are untouched.
template <class S>
inline SignedCoords<S> scale_action(const Triangulation& tri, const SignedCoords<S>& c,
                                    const PunctureScaling<S>& h) {
    if (static_cast<int>(h.h.size()) != tri.punctures()) {
        throw std::invalid_argument("scaling domain does not match the punctures");
    }
    for (const auto& v : h.h) {
        if (!(v > 0)) throw std::invalid_argument("puncture scalings must be positive");
    }
    SignedCoords<S> out = c;
    for (EdgeId e = 0; e < tri.num_edges(); ++e) {
        const auto ends = tri.edge_endpoints(e);
        out.f[e] = c.f[e] * h.h[ends[0]] * h.h[ends[1]];
    }
    return out;
}

template <class S>
struct FlipOutcome {
    Triangulation tri;
    SignedCoords<S> coords;
    FlipRecord record;
    S rhs;    // exchange right-hand side eps(t2) f(a) f(c) + eps(t1) f(b) f(d)
    int sign; // sign of rhs = new sign of t1'
};

/// Exchange relation of a flip, without applying it.
template <class S>
inline S flip_rhs(const SignedCoords<S>& c, const Quad& q) {
    return c.eps[q.t2] * c.f[q.sides[0]] * c.f[q.sides[2]] +
           c.eps[q.t1] * c.f[q.sides[1]] * c.f[q.sides[3]];
}

namespace detail {

template <class S>
inline FlipOutcome<S> flip_unchecked(const Triangulation& tri, const SignedCoords<S>& c,
                                     EdgeId e, double tol, int step_index) {
    const Quad q = tri.quad_of(e);
    const S cross = c.f[q.sides[0]] * c.f[q.sides[2]];
    const S parallel = c.f[q.sides[1]] * c.f[q.sides[3]];
    const S rhs = c.eps[q.t2] * cross + c.eps[q.t1] * parallel;
    if (negligible(rhs, S(cross + parallel), tol)) {
        throw DegenerateFlip("degenerate flip on edge " + std::to_string(e) +
                                 ": exchange right-hand side vanishes",
                             e, step_index);
    }
    const int sgn = sign_of(rhs);
    auto [tri2, record] = tri.flip(e);
    SignedCoords<S> out = c;
    out.f[e] = abs_of(rhs) / c.f[e];
    out.eps[record.t1] = sgn;
    out.eps[record.t2] = c.eps[q.t1] * c.eps[q.t2] * sgn;
    return FlipOutcome<S>{std::move(tri2), std::move(out), record, rhs, sgn};
}

} // namespace detail

/// Coordinate flip on edge e. The new diagonal keeps the edge id, faces
/// keep their ids, f changes only on e, signs change only on the quad.
/// Throws FlipUndefined (no quad), InvalidChart (input not a chart point)
/// or DegenerateFlip (vanishing exchange relation; the point lies outside
/// the flipped chart).
template <class S>
inline FlipOutcome<S> flip(const Triangulation& tri, const SignedCoords<S>& c, EdgeId e,
                           double tol = kDefaultTolerance) {
    require_coords_domain(tri, c);
    if (!is_valid_chart_point(tri, c, tol)) {
        throw InvalidChart("flip input is not a valid chart point");
    }
    return detail::flip_unchecked(tri, c, e, tol, -1);
}

template <class S>
struct FlipTraceStep {
    EdgeId edge;
    S rhs;
    int sign;
};

template <class S>
struct FlipSequenceOutcome {
    Triangulation tri;
    SignedCoords<S> coords;
    std::vector<FlipTraceStep<S>> log;
};

/// Left-to-right composition of flips. Fails fast on the first degenerate
/// step, reporting its index through DegenerateFlip::step. The input chart
/// is validated once; intermediate points are chart points by construction.
template <class S>
inline FlipSequenceOutcome<S> flip_sequence(const Triangulation& tri, const SignedCoords<S>& c,
                                            std::span<const EdgeId> edges,
                                            double tol = kDefaultTolerance) {
    require_coords_domain(tri, c);
    if (!is_valid_chart_point(tri, c, tol)) {
        throw InvalidChart("flip sequence input is not a valid chart point");
    }
    FlipSequenceOutcome<S> state{tri, c, {}};
    state.log.reserve(edges.size());
    for (std::size_t i = 0; i < edges.size(); ++i) {
        auto step = detail::flip_unchecked(state.tri, state.coords, edges[i], tol,
                                           static_cast<int>(i));
        state.tri = std::move(step.tri);
        state.coords = std::move(step.coords);
        state.log.push_back(FlipTraceStep<S>{edges[i], std::move(step.rhs), step.sign});
    }
    return state;
}

template <class S>
inline nlohmann::json coords_to_json(const SignedCoords<S>& c) {
    nlohmann::json jf = nlohmann::json::object();
    for (std::size_t e = 0; e < c.f.size(); ++e) {
        if constexpr (ScalarTraits<S>::exact) {
            jf[std::to_string(e)] = ScalarTraits<S>::to_string(c.f[e]);
        } else {
            jf[std::to_string(e)] = c.f[e];
        }
    }
    nlohmann::json je = nlohmann::json::object();
    for (std::size_t t = 0; t < c.eps.size(); ++t) {
        je[std::to_string(t)] = c.eps[t];
    }
    return nlohmann::json{{"f", std::move(jf)}, {"eps", std::move(je)},
                          {"mode", ScalarTraits<S>::mode_name()}};
}

template <class S>
inline SignedCoords<S> coords_from_json(const Triangulation& tri, const nlohmann::json& j) {
    SignedCoords<S> c;
    c.f.assign(tri.num_edges(), S(0));
    c.eps.assign(tri.num_faces(), 0);
    try {
        if (j.at("mode").get<std::string>() != ScalarTraits<S>::mode_name()) {
            throw IoError(std::string("coordinate mode mismatch, expected ") +
                          ScalarTraits<S>::mode_name());
        }
        std::size_t nf = 0, ne = 0;
        for (auto it = j.at("f").begin(); it != j.at("f").end(); ++it) {
            const int e = std::stoi(it.key());
            if (e < 0 || e >= tri.num_edges()) throw IoError("edge id out of range in coords");
            const nlohmann::json& value = it.value();
            c.f[e] = value.is_string() ? ScalarTraits<S>::from_string(value.get<std::string>())
                                       : S(value.get<double>());
            ++nf;
        }
        for (auto it = j.at("eps").begin(); it != j.at("eps").end(); ++it) {
            const int t = std::stoi(it.key());
            if (t < 0 || t >= tri.num_faces()) throw IoError("face id out of range in coords");
            c.eps[t] = it.value().get<int>();
            ++ne;
        }
        if (static_cast<int>(nf) != tri.num_edges() || static_cast<int>(ne) != tri.num_faces()) {
            throw IoError("coords JSON does not cover every edge and face");
        }
    } catch (const IoError&) {
        throw;
    } catch (const std::exception& e) {
        throw IoError(std::string("bad coords JSON: ") + e.what());
    }
    require_coords_domain(tri, c);
    return c;
}

} // namespace penner
