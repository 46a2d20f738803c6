#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <queue>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "penner/coords.hpp"
#include "penner/scalar.hpp"
#include "penner/surface.hpp"

namespace penner {

/// Element of PSL(2,R) as a determinant-1 representative; equality is
/// always taken modulo the global sign.
template <class S>
struct ProjectiveMatrix {
    S m11, m12, m21, m22;

    static ProjectiveMatrix identity() { return {S(1), S(0), S(0), S(1)}; }

    /// The order-2 Weyl representative: theta^2 = -1 = 1 in PSL(2,R).
    static ProjectiveMatrix theta() { return {S(0), S(1), S(-1), S(0)}; }

    ProjectiveMatrix operator*(const ProjectiveMatrix& r) const {
        return {m11 * r.m11 + m12 * r.m21, m11 * r.m12 + m12 * r.m22,
                m21 * r.m11 + m22 * r.m21, m21 * r.m12 + m22 * r.m22};
    }

    ProjectiveMatrix inverse() const { return {m22, -m12, -m21, m11}; }

    S trace() const { return m11 + m22; }
    S det() const { return m11 * m22 - m12 * m21; }

    S max_abs() const {
        S m = abs_of(m11);
        for (const S* v : {&m12, &m21, &m22}) m = std::max(m, abs_of(*v));
        return m;
    }

    bool projectively_equal(const ProjectiveMatrix& r, double tol = kDefaultTolerance) const {
        const S scale = std::max(max_abs(), r.max_abs());
        auto close = [&](const S& a, const S& b) { return negligible(S(a - b), scale, tol); };
        return (close(m11, r.m11) && close(m12, r.m12) && close(m21, r.m21) &&
                close(m22, r.m22)) ||
               (close(m11, S(-r.m11)) && close(m12, S(-r.m12)) && close(m21, S(-r.m21)) &&
                close(m22, S(-r.m22)));
    }

    bool is_identity(double tol = kDefaultTolerance) const {
        return projectively_equal(identity(), tol);
    }
};

/// Upper-triangular (Borel) element as the pair (u, v), u > 0, embedding as
/// [[u, v], [0, 1/u]]. H is the v = 0 axis, the parabolic subgroup T is
/// u = 1.
template <class S>
struct BorelElement {
    S u, v;

    static BorelElement identity() { return {S(1), S(0)}; }

    ProjectiveMatrix<S> to_matrix() const { return {u, v, S(0), S(1) / u}; }
};

/// Group law (u1,v1)(u2,v2) = (u1 u2, u1 v2 + v1 / u2); matches matrix
/// multiplication under the embedding.
template <class S>
inline BorelElement<S> borel_mul(const BorelElement<S>& x, const BorelElement<S>& y) {
    return {x.u * y.u, x.u * y.v + x.v / y.u};
}

template <class S>
inline BorelElement<S> borel_inv(const BorelElement<S>& x) {
    return {S(1) / x.u, S(-x.v)};
}

enum class BruhatCell { borel, big_cell };

/// G = B theta B ⊔ B: an element is Borel iff its lower-left entry
/// vanishes (within tol * max|entry| in float mode).
template <class S>
inline BruhatCell bruhat_cell(const ProjectiveMatrix<S>& m, double tol = kDefaultTolerance) {
    return negligible(m.m21, m.max_abs(), tol) ? BruhatCell::borel : BruhatCell::big_cell;
}

/// Short-edge parameter of a corner: u(c) = eps(T_c) f(O_c) / (f(A_c) f(B_c)).
template <class S>
inline S corner_u(const Triangulation& tri, const SignedCoords<S>& c, const Corner& cor) {
    (void)tri;
    return corner_term(c, cor);
}

template <class S>
inline S corner_u(const Triangulation& tri, const SignedCoords<S>& c, HalfEdgeId corner_id) {
    return corner_term(c, tri.corner(corner_id));
}

enum class ChartPolicy { require_valid, allow_invalid };

/// Transports on the ribbon graph of the triangulation: one H-parameter per
/// long edge (the edge coordinate itself) and one T-parameter per corner.
/// Graph vertices are half-edge ids: x_h sits on the boundary circle of
/// origin(h), at the end of the long edge of h. The long edge of e joins
/// x_{e0} and x_{e1}; the short edge of corner c runs from x_{twin(prev c)}
/// to x_c along the boundary circle.
template <class S>
struct GraphConnection {
    Triangulation tri;
    std::vector<S> long_params;  // by edge id, positive
    std::vector<S> short_params; // by corner (half-edge) id

    /// theta * (f, 0) = [[0, 1/f], [-f, 0]]; its own inverse up to sign,
    /// so the traversal direction does not matter projectively.
    ProjectiveMatrix<S> long_transport(EdgeId e, bool reverse = false) const {
        const S& f = long_params[e];
        ProjectiveMatrix<S> m{S(0), S(1) / f, S(-f), S(0)};
        return reverse ? m.inverse() : m;
    }

    ProjectiveMatrix<S> short_transport(HalfEdgeId corner_id, bool reverse = false) const {
        const S& u = short_params[corner_id];
        return {S(1), reverse ? S(-u) : u, S(0), S(1)};
    }
};

/// Builds the connection of a chart point: long transports in theta*H with
/// parameter f(e), short transports in T with the corner parameter. By
/// default rejects invalid chart points; allow_invalid builds the transports
/// anyway (their puncture holonomies then degenerate to the identity).
template <class S>
inline GraphConnection<S> build_connection(const Triangulation& tri, const SignedCoords<S>& c,
                                           double tol = kDefaultTolerance,
                                           ChartPolicy policy = ChartPolicy::require_valid) {
    require_coords_domain(tri, c);
    if (policy == ChartPolicy::require_valid && !is_valid_chart_point(tri, c, tol)) {
        throw InvalidChart("connection requested for an invalid chart point");
    }
    GraphConnection<S> conn{tri, c.f, std::vector<S>(tri.num_halfedges())};
    for (HalfEdgeId h = 0; h < tri.num_halfedges(); ++h) {
        conn.short_params[h] = corner_term(c, tri.corner(h));
    }
    return conn;
}

struct WalkStep {
    enum class Kind { long_edge, short_edge };
    Kind kind;
    std::int32_t id;      // edge id or corner (half-edge) id
    bool reverse = false; // traverse against the reference direction
};

/// Walk in the ribbon graph: a start vertex (half-edge id) plus steps.
struct Walk {
    HalfEdgeId start;
    std::vector<WalkStep> steps;
};

/// Reference endpoints (from, to) of a step, before applying its reverse flag.
inline std::pair<HalfEdgeId, HalfEdgeId> step_endpoints(const Triangulation& tri,
                                                        const WalkStep& s) {
    std::pair<HalfEdgeId, HalfEdgeId> ends;
    if (s.kind == WalkStep::Kind::long_edge) {
        if (s.id < 0 || s.id >= tri.num_edges()) throw MalformedWalk("long step id out of range");
        ends = {tri.edge_halfedges(s.id)[0], tri.edge_halfedges(s.id)[1]};
    } else {
        if (s.id < 0 || s.id >= tri.num_halfedges()) {
            throw MalformedWalk("short step id out of range");
        }
        ends = {tri.twin(tri.prev(s.id)), s.id};
    }
    if (s.reverse) std::swap(ends.first, ends.second);
    return ends;
}

/// Validates chaining and returns the final vertex.
inline HalfEdgeId walk_end(const Triangulation& tri, const Walk& w) {
    HalfEdgeId at = w.start;
    if (at < 0 || at >= tri.num_halfedges()) throw MalformedWalk("walk start out of range");
    for (const WalkStep& s : w.steps) {
        const auto [from, to] = step_endpoints(tri, s);
        if (from != at) {
            throw MalformedWalk("walk steps do not chain");
        }
        at = to;
    }
    return at;
}

inline std::string walk_to_string(const Walk& w) {
    std::string out = "@" + std::to_string(w.start);
    for (const WalkStep& s : w.steps) {
        out += s.kind == WalkStep::Kind::long_edge ? " L" : " S";
        out += std::to_string(s.id);
        if (s.reverse) out += '\'';
    }
    return out;
}

/// Ordered product of the step transports, first step applied first
/// (column-vector convention); reversed steps contribute exact inverses.
template <class S>
inline ProjectiveMatrix<S> path_holonomy(const GraphConnection<S>& conn, const Walk& w) {
    walk_end(conn.tri, w);
    auto m = ProjectiveMatrix<S>::identity();
    for (const WalkStep& s : w.steps) {
        const auto t = s.kind == WalkStep::Kind::long_edge
                           ? conn.long_transport(s.id, s.reverse)
                           : conn.short_transport(s.id, s.reverse);
        m = t * m;
    }
    return m;
}

/// Ordered product of the short transports around the boundary circle of p:
/// equals (1, phi_P). Parabolic precisely when phi_P is nonzero.
template <class S>
inline BorelElement<S> puncture_holonomy(const GraphConnection<S>& conn, PunctureId p) {
    auto b = BorelElement<S>::identity();
    for (const Corner& cor : conn.tri.corners_at(p)) {
        b = borel_mul(BorelElement<S>{S(1), conn.short_params[cor.id]}, b);
    }
    return b;
}

/// Boundary hexagon of a face in the calibrated traversal order
/// long(e(h0)), short(h1), long(e(h1)), short(h2), long(e(h2)), short(h0):
/// its holonomy is eps(t) * identity for every chart point.
inline Walk face_hexagon_walk(const Triangulation& tri, FaceId f) {
    const auto& fh = tri.face_halfedges(f);
    Walk w{fh[0], {}};
    for (int i = 0; i < 3; ++i) {
        const HalfEdgeId h = fh[i];
        const EdgeId e = tri.edge_of(h);
        w.steps.push_back(
            {WalkStep::Kind::long_edge, e, tri.edge_halfedges(e)[0] != h});
        w.steps.push_back({WalkStep::Kind::short_edge, fh[(i + 1) % 3], false});
    }
    return w;
}

/// Walks realizing an edge of the triangulation as an arc between its two
/// endpoint circles: the trivial walk and the long edge itself, both based
/// at the first endpoint vertex.
inline std::pair<Walk, Walk> edge_arc_walks(const Triangulation& tri, EdgeId e) {
    const HalfEdgeId base = tri.edge_halfedges(e)[0];
    Walk to_far{base, {WalkStep{WalkStep::Kind::long_edge, e, false}}};
    return {Walk{base, {}}, std::move(to_far)};
}

/// Walks realizing the would-be flip diagonal of e (the arc joining the two
/// quad corners not on e), based at a diagonal endpoint vertex. Each walk
/// stays inside one triangle of the quad, so its homotopy class is forced.
inline std::pair<Walk, Walk> diagonal_arc_walks(const Triangulation& tri, EdgeId e) {
    const Quad q = tri.quad_of(e);
    const HalfEdgeId ha = q.side_halfedges[0], hc = q.side_halfedges[2];
    const EdgeId a = q.sides[0], c = q.sides[2];
    Walk wa{q.he1,
            {WalkStep{WalkStep::Kind::long_edge, e, tri.edge_halfedges(e)[0] != q.he1},
             WalkStep{WalkStep::Kind::short_edge, ha, false},
             WalkStep{WalkStep::Kind::long_edge, a, tri.edge_halfedges(a)[0] != ha}}};
    Walk wb{q.he1,
            {WalkStep{WalkStep::Kind::short_edge, hc, false},
             WalkStep{WalkStep::Kind::long_edge, c, tri.edge_halfedges(c)[0] != hc}}};
    return {std::move(wa), std::move(wb)};
}

/// |trace| = 2 and not the identity (projectively).
template <class S>
inline bool is_parabolic(const ProjectiveMatrix<S>& m, double tol = kDefaultTolerance) {
    const S t = abs_of(m.trace());
    if (!negligible(S(t - 2), S(1 + t), tol)) return false;
    return !m.is_identity(tol);
}

/// The unique fixed direction of a parabolic element, as an exact
/// projective ratio pair (never divided out).
template <class S>
inline std::pair<S, S> parabolic_fixed_point(const ProjectiveMatrix<S>& m,
                                             double tol = kDefaultTolerance) {
    if (!is_parabolic(m, tol)) {
        throw NotParabolic("fixed point requested for a non-parabolic element");
    }
    const S lambda(sign_of(m.trace()));
    const S n11 = m.m11 - lambda, n12 = m.m12;
    const S n21 = m.m21, n22 = m.m22 - lambda;
    // kernel vector of the rank-1 matrix [[n11, n12], [n21, n22]]
    if (abs_of(n11) + abs_of(n12) >= abs_of(n21) + abs_of(n22)) {
        return {S(-n12), n11};
    }
    return {S(-n22), n21};
}

/// True iff two parabolic elements share their fixed direction (exact cross
/// product test in rational mode).
template <class S>
inline bool same_parabolic_subgroup(const ProjectiveMatrix<S>& x, const ProjectiveMatrix<S>& y,
                                    double tol = kDefaultTolerance) {
    const auto [x1, y1] = parabolic_fixed_point(x, tol);
    const auto [x2, y2] = parabolic_fixed_point(y, tol);
    const S cross = x1 * y2 - y1 * x2;
    return negligible(cross, S(abs_of(x1 * y2) + abs_of(y1 * x2)), tol);
}

/// Admissibility of the arc presented by two walks from a common base
/// vertex to two boundary circles: the two closed-up loop holonomies must
/// be parabolic with distinct fixed directions. Throws NotParabolic when a
/// loop holonomy degenerates to the identity (phi = 0 at that puncture).
template <class S>
inline bool is_arc_admissible(const GraphConnection<S>& conn, const Walk& walk_a,
                              const Walk& walk_b, double tol = kDefaultTolerance) {
    if (walk_a.start != walk_b.start) {
        throw MalformedWalk("admissibility walks must share their base vertex");
    }
    auto loop = [&](const Walk& w) {
        const HalfEdgeId end = walk_end(conn.tri, w);
        const auto transport = path_holonomy(conn, w);
        const auto circle = puncture_holonomy(conn, conn.tri.origin(end)).to_matrix();
        return transport.inverse() * circle * transport;
    };
    const auto la = loop(walk_a);
    const auto lb = loop(walk_b);
    if (!is_parabolic(la, tol) || !is_parabolic(lb, tol)) {
        throw NotParabolic("loop holonomy around a puncture is the identity");
    }
    return !same_parabolic_subgroup(la, lb, tol);
}

template <class S>
struct CycleGenerator {
    Walk word;
    ProjectiveMatrix<S> matrix;
};

template <class S>
struct Pi1Representation {
    std::vector<CycleGenerator<S>> generators; // 3*kappa + 1 fundamental cycles
    int hexagon_rank;                          // GF(2) rank of the face relations (2*kappa)
    int independent_rank;                      // generators modulo hexagons: 2g + s - 1
};

/// Fundamental cycles of the ribbon graph from a BFS spanning tree, with
/// their holonomies. The graph has 6*kappa vertices and 9*kappa edges, so
/// there are 3*kappa + 1 cycles; the 2*kappa hexagon relations are trivial
/// in the holonomy image, leaving 2g + s - 1 independent generators.
template <class S>
inline Pi1Representation<S> pi1_representation(const GraphConnection<S>& conn,
                                               HalfEdgeId base = 0) {
    const Triangulation& tri = conn.tri;
    const int n = tri.num_halfedges();
    struct GammaEdge {
        WalkStep step;
        HalfEdgeId from, to;
    };
    std::vector<GammaEdge> gamma;
    gamma.reserve(tri.num_edges() + n);
    for (EdgeId e = 0; e < tri.num_edges(); ++e) {
        gamma.push_back({WalkStep{WalkStep::Kind::long_edge, e, false},
                         tri.edge_halfedges(e)[0], tri.edge_halfedges(e)[1]});
    }
    for (HalfEdgeId c = 0; c < n; ++c) {
        gamma.push_back(
            {WalkStep{WalkStep::Kind::short_edge, c, false}, tri.twin(tri.prev(c)), c});
    }
    std::vector<std::vector<std::pair<int, bool>>> adjacency(n); // (gamma idx, forward?)
    for (int i = 0; i < static_cast<int>(gamma.size()); ++i) {
        adjacency[gamma[i].from].push_back({i, true});
        adjacency[gamma[i].to].push_back({i, false});
    }

    std::vector<int> parent_edge(n, -1);
    std::vector<bool> parent_forward(n, false);
    std::vector<char> visited(n, 0);
    std::vector<char> in_tree(gamma.size(), 0);
    std::queue<HalfEdgeId> bfs;
    bfs.push(base);
    visited[base] = 1;
    while (!bfs.empty()) {
        const HalfEdgeId v = bfs.front();
        bfs.pop();
        for (const auto& [idx, forward] : adjacency[v]) {
            const HalfEdgeId w = forward ? gamma[idx].to : gamma[idx].from;
            if (!visited[w]) {
                visited[w] = 1;
                parent_edge[w] = idx;
                parent_forward[w] = forward;
                in_tree[idx] = 1;
                bfs.push(w);
            }
        }
    }

    auto path_from_base = [&](HalfEdgeId v) {
        std::vector<WalkStep> steps;
        while (v != base) {
            const int idx = parent_edge[v];
            WalkStep s = gamma[idx].step;
            s.reverse = !parent_forward[v];
            steps.push_back(s);
            v = parent_forward[v] ? gamma[idx].from : gamma[idx].to;
        }
        std::reverse(steps.begin(), steps.end());
        return steps;
    };
    auto reversed = [](std::vector<WalkStep> steps) {
        std::reverse(steps.begin(), steps.end());
        for (auto& s : steps) s.reverse = !s.reverse;
        return steps;
    };

    Pi1Representation<S> rep{{}, 0, 0};
    for (int idx = 0; idx < static_cast<int>(gamma.size()); ++idx) {
        if (in_tree[idx]) continue;
        Walk w{base, path_from_base(gamma[idx].from)};
        w.steps.push_back(gamma[idx].step);
        const auto back = reversed(path_from_base(gamma[idx].to));
        w.steps.insert(w.steps.end(), back.begin(), back.end());
        rep.generators.push_back({w, path_holonomy(conn, w)});
    }

    // GF(2) rank of the hexagon boundaries in the cycle space.
    const int bits = static_cast<int>(gamma.size());
    const int words = (bits + 63) / 64;
    std::vector<std::vector<std::uint64_t>> rows;
    for (FaceId f = 0; f < tri.num_faces(); ++f) {
        std::vector<std::uint64_t> row(words, 0);
        for (const WalkStep& s : face_hexagon_walk(tri, f).steps) {
            const int bit = s.kind == WalkStep::Kind::long_edge
                                ? s.id
                                : tri.num_edges() + s.id;
            row[bit / 64] ^= std::uint64_t(1) << (bit % 64);
        }
        rows.push_back(std::move(row));
    }
    int rank = 0;
    for (int bit = 0; bit < bits && rank < static_cast<int>(rows.size()); ++bit) {
        int pivot = -1;
        for (int r = rank; r < static_cast<int>(rows.size()); ++r) {
            if ((rows[r][bit / 64] >> (bit % 64)) & 1) {
                pivot = r;
                break;
            }
        }
        if (pivot == -1) continue;
        std::swap(rows[rank], rows[pivot]);
        for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
            if (r != rank && ((rows[r][bit / 64] >> (bit % 64)) & 1)) {
                for (int wd = 0; wd < words; ++wd) rows[r][wd] ^= rows[rank][wd];
            }
        }
        ++rank;
    }
    rep.hexagon_rank = rank;
    rep.independent_rank = static_cast<int>(rep.generators.size()) - rank;
    return rep;
}

/// Solution of the hexagon equations for one corner: given u(c) and the
/// flanking long parameters, the opposite long parameter and the other two
/// corner parameters of the triangle.
template <class S>
struct CornerExtension {
    S v_opposite; // |u(c)| v(A_c) v(B_c)
    S u_a;        // corner opposite A_c: 1 / (u(c) v(B_c)^2)
    S u_b;        // corner opposite B_c: 1 / (u(c) v(A_c)^2)
};

template <class S>
inline CornerExtension<S> corner_extension(const S& u_c, const S& v_a, const S& v_b,
                                           double tol = kDefaultTolerance) {
    if (negligible(u_c, S(1), tol)) {
        throw DegenerateFlip("corner parameter vanishes; no extension", -1);
    }
    return {abs_of(u_c) * v_a * v_b, S(1) / (u_c * v_b * v_b), S(1) / (u_c * v_a * v_a)};
}

/// Matrix-pipeline extension of the connection to the would-be flip
/// diagonal: the two corners cut by the old diagonal merge (their
/// T-parameters add), and the new long parameter follows from the corner
/// extension formulas.
template <class S>
struct DiagonalExtension {
    S f_new;          // long parameter of the new diagonal
    S u_corner_t1;    // merged corner of t1' (between sides d and a)
    S u_corner_t2;    // merged corner of t2' (between sides b and c)
    int sign_t1;      // sign of the t1' face: sign(u_corner_t1)
    int sign_t2;      // sign of the t2' face: sign(u_corner_t2)
};

template <class S>
inline DiagonalExtension<S> extend_to_diagonal(const Triangulation& tri,
                                               const SignedCoords<S>& c, EdgeId e,
                                               double tol = kDefaultTolerance) {
    require_coords_domain(tri, c);
    const Quad q = tri.quad_of(e);
    const auto [ha, hb, hc, hd] = q.side_halfedges;
    // Corners of t1 and t2 at the two diagonal endpoints.
    const S at_t1_start = corner_term(c, tri.corner(ha));  // t1 corner between a and e
    const S at_t2_start = corner_term(c, tri.corner(q.he2)); // t2 corner between e and d
    const S at_t1_end = corner_term(c, tri.corner(q.he1)); // t1 corner between e and b
    const S at_t2_end = corner_term(c, tri.corner(hc));    // t2 corner between c and e
    const S merged_t1 = at_t1_start + at_t2_start;
    const S merged_t2 = at_t1_end + at_t2_end;
    if (negligible(merged_t1, S(abs_of(at_t1_start) + abs_of(at_t2_start)), tol)) {
        throw DegenerateFlip("merged corner parameter vanishes; point leaves the chart", e);
    }
    const S f_new = abs_of(merged_t1) * c.f[q.sides[3]] * c.f[q.sides[0]];
    return {f_new, merged_t1, merged_t2, sign_of(merged_t1), sign_of(merged_t2)};
}

/// Heuristic irreducibility test: true iff all matrices share a real fixed
/// direction in RP^1, decided exactly via the gcd of the fixed-point
/// quadratic forms. Reducible representations always return true; the
/// converse is a heuristic (shared directions may be spurious for small
/// generator sets).
inline bool common_fixed_direction_exists(std::span<const ProjectiveMatrix<Rational>> mats) {
    using Form = std::array<Rational, 3>; // A x^2 + B x y + C y^2
    std::vector<Form> forms;
    for (const auto& m : mats) {
        Form q{m.m21, m.m22 - m.m11, -m.m12};
        if (q[0] == 0 && q[1] == 0 && q[2] == 0) continue; // +-identity fixes everything
        forms.push_back(std::move(q));
    }
    if (forms.empty()) return true;

    bool infinity_root = true; // (1:0) is a root of a form iff A = 0
    for (const auto& q : forms) infinity_root = infinity_root && q[0] == 0;
    if (infinity_root) return true;

    // gcd of the dehomogenized polynomials A x^2 + B x + C over Q.
    using Poly = std::vector<Rational>; // coefficients, low degree first
    auto trim = [](Poly& p) {
        while (!p.empty() && p.back() == 0) p.pop_back();
    };
    auto rem = [&](Poly a, const Poly& b) {
        while (a.size() >= b.size()) {
            const Rational q = a.back() / b.back();
            for (std::size_t i = 0; i < b.size(); ++i) {
                a[a.size() - b.size() + i] -= q * b[i];
            }
            a.pop_back();
            trim(a);
            if (a.empty()) break;
        }
        return a;
    };
    auto gcd = [&](Poly a, Poly b) {
        trim(a);
        trim(b);
        while (!b.empty()) {
            Poly r = rem(a, b);
            a = std::move(b);
            b = std::move(r);
        }
        return a;
    };
    Poly g{forms[0][2], forms[0][1], forms[0][0]};
    trim(g);
    for (std::size_t i = 1; i + 0 < forms.size() && g.size() > 1; ++i) {
        g = gcd(g, Poly{forms[i][2], forms[i][1], forms[i][0]});
    }
    if (g.size() == 2) return true; // shared linear factor: rational direction
    if (g.size() == 3) {
        const Rational disc = g[1] * g[1] - 4 * g[2] * g[0];
        return disc >= 0; // real shared directions
    }
    return false;
}

template <class S>
inline nlohmann::json matrix_to_json(const ProjectiveMatrix<S>& m) {
    return nlohmann::json::array({ScalarTraits<S>::to_string(m.m11),
                                  ScalarTraits<S>::to_string(m.m12),
                                  ScalarTraits<S>::to_string(m.m21),
                                  ScalarTraits<S>::to_string(m.m22)});
}

template <class S>
inline nlohmann::json connection_to_json(const GraphConnection<S>& conn) {
    nlohmann::json jl = nlohmann::json::object();
    for (std::size_t e = 0; e < conn.long_params.size(); ++e) {
        jl[std::to_string(e)] = ScalarTraits<S>::to_string(conn.long_params[e]);
    }
    nlohmann::json js = nlohmann::json::object();
    for (std::size_t c = 0; c < conn.short_params.size(); ++c) {
        js[std::to_string(c)] = ScalarTraits<S>::to_string(conn.short_params[c]);
    }
    return nlohmann::json{{"long", std::move(jl)}, {"short", std::move(js)}};
}

} // namespace penner
