#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "penner/coords.hpp"
#include "penner/scalar.hpp"
#include "penner/surface.hpp"

namespace penner {

/// Deterministic 64-bit generator (splitmix64). Chosen over std::mt19937_64
/// plus distributions so that replay is bit-identical across standard
/// libraries.
class SampleRng {
public:
    explicit SampleRng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += 0x9e3779b97f4a7c15ull;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    /// Uniform integer in [0, n), rejection-sampled.
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t limit = n * ((~std::uint64_t(0)) / n);
        std::uint64_t x = next();
        while (x >= limit) x = next();
        return x % n;
    }

    /// Uniform in [0, 1) with 53 random bits.
    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t state_;
};

/// Sampling recipe for chart points. Rational mode draws f(e) = p/q with
/// p, q uniform in [1, max_denominator]; float mode draws f(e) log-uniform
/// on [1/bound, bound]. Signs are per-face coin flips unless a fixed
/// pattern is supplied.
struct SampleSpec {
    std::uint64_t seed = 0;
    double bound = 16.0;                 // R > 1, float mode spread
    int max_denominator = 1000;
    std::optional<std::vector<int>> eps; // fixed sign pattern
    int max_retries = 64;
};

namespace detail {

template <class S>
inline S sample_f(SampleRng& rng, const SampleSpec& spec) {
    if constexpr (ScalarTraits<S>::exact) {
        const auto p = 1 + rng.below(static_cast<std::uint64_t>(spec.max_denominator));
        const auto q = 1 + rng.below(static_cast<std::uint64_t>(spec.max_denominator));
        return S(Rational(p) / Rational(q));
    } else {
        return std::exp((2.0 * rng.unit() - 1.0) * std::log(spec.bound));
    }
}

template <class S>
inline SignedCoords<S> sample_once(const Triangulation& tri, SampleRng& rng,
                                   const SampleSpec& spec) {
    SignedCoords<S> c;
    c.f.reserve(tri.num_edges());
    for (EdgeId e = 0; e < tri.num_edges(); ++e) {
        c.f.push_back(sample_f<S>(rng, spec));
    }
    if (spec.eps) {
        if (static_cast<int>(spec.eps->size()) != tri.num_faces()) {
            throw std::invalid_argument("fixed sign pattern does not match the face count");
        }
        c.eps = *spec.eps;
    } else {
        c.eps.reserve(tri.num_faces());
        for (FaceId t = 0; t < tri.num_faces(); ++t) {
            c.eps.push_back(rng.below(2) == 0 ? 1 : -1);
        }
    }
    return c;
}

} // namespace detail

/// Rejection-samples a valid chart point. phi = 0 is codimension one, so a
/// handful of retries suffices unless the sign pattern is identically
/// invalid (e.g. mixed signs on the once-punctured torus), in which case
/// IdenticallyInvalid reports the evidence.
template <class S>
inline SignedCoords<S> sample_chart_point(const Triangulation& tri, const SampleSpec& spec,
                                          double tol = kDefaultTolerance) {
    SampleRng rng(spec.seed);
    for (int attempt = 0; attempt < spec.max_retries; ++attempt) {
        auto c = detail::sample_once<S>(tri, rng, spec);
        if (is_valid_chart_point(tri, c, tol)) return c;
    }
    throw IdenticallyInvalid("no valid chart point after " + std::to_string(spec.max_retries) +
                             " draws; the sign stratum appears to be empty");
}

/// Edges whose flip is defined and non-degenerate at the given point.
template <class S>
inline std::vector<EdgeId> admissible_flip_targets(const Triangulation& tri,
                                                   const SignedCoords<S>& c,
                                                   double tol = kDefaultTolerance) {
    std::vector<EdgeId> out;
    for (EdgeId e = 0; e < tri.num_edges(); ++e) {
        Quad q;
        try {
            q = tri.quad_of(e);
        } catch (const FlipUndefined&) {
            continue;
        }
        const S cross = c.f[q.sides[0]] * c.f[q.sides[2]];
        const S parallel = c.f[q.sides[1]] * c.f[q.sides[3]];
        const S rhs = c.eps[q.t2] * cross + c.eps[q.t1] * parallel;
        if (!negligible(rhs, S(cross + parallel), tol)) out.push_back(e);
    }
    return out;
}

enum class RouteStatus { found, inconclusive };

template <class S>
struct RouteStep {
    EdgeId edge;
    S rhs;
    int sign;
};

/// Flip route between triangulations. Failure within the depth limit is
/// inconclusive evidence only: the point may still reach the target through
/// longer routes.
template <class S>
struct FoundRoute {
    RouteStatus status = RouteStatus::inconclusive;
    std::vector<RouteStep<S>> steps;
    std::optional<MapIsomorphism> arrival; // target relabeling when found
    int explored = 0;                      // states expanded
};

/// Breadth-first search over the flip graph restricted to non-degenerate
/// flips, deduplicating by exact labeled state (route independence makes
/// coordinates a function of the labeled triangulation). Success means a
/// state isomorphic to the target was reached.
template <class S>
inline FoundRoute<S> find_route(const Triangulation& tri, const SignedCoords<S>& c,
                                const Triangulation& target, int depth_limit,
                                double tol = kDefaultTolerance, int state_budget = 200000) {
    require_coords_domain(tri, c);
    if (!is_valid_chart_point(tri, c, tol)) {
        throw InvalidChart("route source is not a valid chart point");
    }
    struct Node {
        Triangulation tri;
        SignedCoords<S> coords;
        std::vector<RouteStep<S>> steps;
    };
    std::deque<Node> queue;
    std::set<std::string> visited;
    queue.push_back({tri, c, {}});
    visited.insert(tri.labeled_key());
    FoundRoute<S> result;
    while (!queue.empty()) {
        Node node = std::move(queue.front());
        queue.pop_front();
        ++result.explored;
        if (auto iso = node.tri.isomorphism_to(target)) {
            result.status = RouteStatus::found;
            result.steps = std::move(node.steps);
            result.arrival = std::move(iso);
            return result;
        }
        if (static_cast<int>(node.steps.size()) >= depth_limit ||
            result.explored > state_budget) {
            continue;
        }
        for (EdgeId e = 0; e < node.tri.num_edges(); ++e) {
            Quad q;
            try {
                q = node.tri.quad_of(e);
            } catch (const FlipUndefined&) {
                continue;
            }
            const S rhs = flip_rhs(node.coords, q);
            const S scale = node.coords.f[q.sides[0]] * node.coords.f[q.sides[2]] +
                            node.coords.f[q.sides[1]] * node.coords.f[q.sides[3]];
            if (negligible(rhs, scale, tol)) continue;
            auto step = detail::flip_unchecked(node.tri, node.coords, e, tol, -1);
            if (!visited.insert(step.tri.labeled_key()).second) continue;
            Node child{std::move(step.tri), std::move(step.coords), node.steps};
            child.steps.push_back(RouteStep<S>{e, std::move(step.rhs), step.sign});
            queue.push_back(std::move(child));
        }
    }
    return result;
}

template <class S>
inline nlohmann::json route_to_json(const FoundRoute<S>& route) {
    nlohmann::json steps = nlohmann::json::array();
    for (const auto& s : route.steps) {
        steps.push_back(nlohmann::json{{"edge", s.edge},
                                       {"S", ScalarTraits<S>::to_string(s.rhs)},
                                       {"sign", s.sign}});
    }
    return nlohmann::json{{"success", route.status == RouteStatus::found},
                          {"steps", std::move(steps)}};
}

/// One census row: a sign-pattern class (up to the automorphisms of the
/// canonical triangulation), its component index and trial outcomes.
struct CensusRow {
    std::string pattern; // representative, '+'/'-' by face id
    int k;
    int trials;
    int valid;
    int invalid;
};

/// Samples `trials` random positive coordinate tuples for one
/// representative of every sign-pattern class and counts valid chart
/// points. Per-trial seeds derive from spec.seed, so the census replays
/// byte-identically.
template <class S>
inline std::vector<CensusRow> component_census(int genus, int punctures, const SampleSpec& spec,
                                               int trials, double tol = kDefaultTolerance) {
    const Triangulation tri = Triangulation::canonical(genus, punctures);
    const auto autos = tri.automorphisms();
    const int nf = tri.num_faces();
    if (nf > 20) throw std::invalid_argument("census limited to desk-scale surfaces");

    auto pattern_of = [&](std::uint32_t mask) {
        std::vector<int> eps(nf);
        for (int t = 0; t < nf; ++t) eps[t] = (mask >> t) & 1 ? -1 : 1;
        return eps;
    };
    // Orbit representatives of the face action of Aut on sign patterns.
    std::map<std::uint32_t, std::uint32_t> representative;
    for (std::uint32_t mask = 0; mask < (std::uint32_t(1) << nf); ++mask) {
        std::uint32_t rep = mask;
        for (const auto& iso : autos) {
            std::uint32_t image = 0;
            for (int t = 0; t < nf; ++t) {
                if ((mask >> t) & 1) image |= std::uint32_t(1) << iso.faces[t];
            }
            rep = std::min(rep, image);
        }
        representative[mask] = rep;
    }

    std::vector<CensusRow> rows;
    std::vector<std::uint32_t> reps;
    for (const auto& [mask, rep] : representative) {
        if (mask == rep) reps.push_back(mask);
    }
    for (std::size_t ci = 0; ci < reps.size(); ++ci) {
        const auto eps = pattern_of(reps[ci]);
        std::string pat;
        for (int t = 0; t < nf; ++t) pat += eps[t] == 1 ? '+' : '-';
        int sum = 0;
        for (int v : eps) sum += v;
        CensusRow row{pat, sum / 2, trials, 0, 0};
        for (int trial = 0; trial < trials; ++trial) {
            SampleRng rng(spec.seed ^ (0x5851f42d4c957f2dull * (ci + 1) + trial));
            SampleSpec one = spec;
            one.eps = eps;
            auto c = detail::sample_once<S>(tri, rng, one);
            if (is_valid_chart_point(tri, c, tol)) {
                ++row.valid;
            } else {
                ++row.invalid;
            }
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

inline std::string census_csv(const std::vector<CensusRow>& rows) {
    std::string out = "pattern_class,k,trials,valid,invalid\n";
    for (const auto& r : rows) {
        out += r.pattern + ',' + std::to_string(r.k) + ',' + std::to_string(r.trials) + ',' +
               std::to_string(r.valid) + ',' + std::to_string(r.invalid) + '\n';
    }
    return out;
}

} // namespace penner
