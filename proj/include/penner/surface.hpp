#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "penner/errors.hpp"

namespace penner {

using HalfEdgeId = std::int32_t;
using EdgeId = std::int32_t;
using FaceId = std::int32_t;
using PunctureId = std::int32_t;

/// One corner of an ideal triangle. A corner is identified with the
/// half-edge leaving its apex: the apex is the half-edge's origin, the
/// opposite side is the next side of the face, and the two flanking sides
/// (both containing the apex) are the half-edge's own side and the previous
/// side. flank_a is the outgoing flank, flank_b the incoming one.
struct Corner {
    HalfEdgeId id;
    FaceId face;       // T_c
    PunctureId apex;   // P
    EdgeId opposite;   // O_c
    EdgeId flank_a;    // A_c = edge of the corner half-edge itself
    EdgeId flank_b;    // B_c = edge of the previous half-edge
};

/// The ideal quadrilateral around a flippable edge. Faces t1 = (e, a, b)
/// and t2 = (e, c, d), sides listed in the cyclic order induced by the
/// orientation. Sides need not be distinct edges (a = c and b = d on the
/// once-punctured torus).
struct Quad {
    EdgeId diagonal;
    FaceId t1;
    FaceId t2;
    std::array<EdgeId, 4> sides;               // a, b, c, d
    HalfEdgeId he1;                            // diagonal half-edge inside t1
    HalfEdgeId he2;                            // diagonal half-edge inside t2
    std::array<HalfEdgeId, 4> side_halfedges;  // ha, hb, hc, hd
};

/// Bijection between two triangulations commuting with the face cycles and
/// the edge pairings; the derived edge/face/puncture maps come with it.
struct MapIsomorphism {
    std::vector<HalfEdgeId> halfedges;
    std::vector<EdgeId> edges;
    std::vector<FaceId> faces;
    std::vector<PunctureId> punctures;
};

/// Record of one flip. Identifiers are reused: the new diagonal keeps the
/// id of the old one, the two new faces keep the ids of the two old ones
/// (t1 becomes the face with sides (e', d, a), t2 the one with (e', b, c)).
/// Every other edge and face maps to itself.
struct FlipRecord {
    EdgeId diagonal;
    FaceId t1;
    FaceId t2;
    Quad quad; // the quad of the *input* triangulation
};

/// Combinatorial map of an ideal triangulation of the punctured surface
/// Sigma_{g,s}: 2*kappa oriented triangular faces over 6*kappa half-edges,
/// 3*kappa edge pairings, with punctures recovered as the orbits of the
/// vertex walk h -> next(twin(h)). Immutable after construction; flips
/// return new values.
///
/// Puncture labels are session state: they are assigned canonically on
/// construction (orbits ordered by smallest half-edge) and transported
/// physically across flips, so that an edge keeps its endpoints. The JSON
/// schema carries only the combinatorics; loading reassigns canonical
/// labels.
class Triangulation {
public:
    Triangulation(int genus, int punctures,
                  std::vector<std::array<HalfEdgeId, 3>> faces,
                  std::vector<std::array<HalfEdgeId, 2>> edges)
        : Triangulation(genus, punctures, std::move(faces), std::move(edges), {}) {}

    /// Canonical triangulation of Sigma_{g,s}. For g = 0 this is the
    /// two-triangle sphere on three punctures; for g >= 1 the fan
    /// triangulation of the 4g-gon with the standard a b a^-1 b^-1 ...
    /// boundary identification (a single puncture). Additional punctures
    /// are introduced by coning the face of highest id, one at a time.
    static Triangulation canonical(int genus, int punctures) {
        check_signature(genus, punctures);
        std::vector<std::array<HalfEdgeId, 3>> faces;
        std::vector<std::array<HalfEdgeId, 2>> edges;
        int base_punctures = 0;
        if (genus == 0) {
            // Two triangles glued along all three edges (theta graph on S^2).
            faces = {{0, 1, 2}, {3, 5, 4}};
            edges = {{0, 3}, {1, 4}, {2, 5}};
            base_punctures = 3;
        } else {
            const int n = 4 * genus;
            // Boundary half-edges 0..n-1; diagonal j (2 <= j <= n-2) gets
            // half-edges n+2(j-2) (from corner 0) and n+2(j-2)+1 (back).
            auto diag_fwd = [n](int j) { return n + 2 * (j - 2); };
            auto diag_bwd = [n](int j) { return n + 2 * (j - 2) + 1; };
            faces.push_back({0, 1, diag_bwd(2)});
            for (int j = 2; j <= n - 3; ++j) {
                faces.push_back({diag_fwd(j), j, diag_bwd(j + 1)});
            }
            faces.push_back({diag_fwd(n - 2), n - 2, n - 1});
            for (int k = 0; k < genus; ++k) {
                edges.push_back({4 * k, 4 * k + 2});
                edges.push_back({4 * k + 1, 4 * k + 3});
            }
            for (int j = 2; j <= n - 2; ++j) {
                edges.push_back({diag_fwd(j), diag_bwd(j)});
            }
            base_punctures = 1;
        }
        for (int extra = base_punctures; extra < punctures; ++extra) {
            cone_last_face(faces, edges);
        }
        return Triangulation(genus, punctures, std::move(faces), std::move(edges));
    }

    int genus() const { return genus_; }
    int punctures() const { return punctures_; }
    int kappa() const { return 2 * genus_ - 2 + punctures_; }
    int num_faces() const { return static_cast<int>(faces_.size()); }
    int num_edges() const { return static_cast<int>(edges_.size()); }
    int num_halfedges() const { return static_cast<int>(next_.size()); }
    int num_corners() const { return num_halfedges(); }

    HalfEdgeId next(HalfEdgeId h) const { return next_[h]; }
    HalfEdgeId prev(HalfEdgeId h) const { return next_[next_[h]]; }
    HalfEdgeId twin(HalfEdgeId h) const { return twin_[h]; }
    EdgeId edge_of(HalfEdgeId h) const { return edge_of_[h]; }
    FaceId face_of(HalfEdgeId h) const { return face_of_[h]; }
    PunctureId origin(HalfEdgeId h) const { return origin_[h]; }

    const std::array<HalfEdgeId, 3>& face_halfedges(FaceId f) const { return faces_[f]; }
    const std::array<HalfEdgeId, 2>& edge_halfedges(EdgeId e) const { return edges_[e]; }

    /// Endpoint punctures of an edge (equal for a loop).
    std::array<PunctureId, 2> edge_endpoints(EdgeId e) const {
        return {origin_[edges_[e][0]], origin_[edges_[e][1]]};
    }

    Corner corner(HalfEdgeId h) const {
        return Corner{h,          face_of_[h],           origin_[h],
                      edge_of_[next(h)], edge_of_[h],    edge_of_[prev(h)]};
    }

    /// Corners containing puncture p, in the cyclic order of the vertex
    /// walk h -> next(twin(h)), starting from the smallest half-edge id.
    std::vector<Corner> corners_at(PunctureId p) const {
        if (p < 0 || p >= punctures_) {
            throw InvalidSurface("puncture id out of range");
        }
        HalfEdgeId start = -1;
        for (HalfEdgeId h = 0; h < num_halfedges(); ++h) {
            if (origin_[h] == p) {
                start = h;
                break;
            }
        }
        std::vector<Corner> out;
        HalfEdgeId h = start;
        do {
            out.push_back(corner(h));
            h = next(twin_[h]);
        } while (h != start);
        return out;
    }

    /// The quadrilateral with diagonal e. t1 is the face of the smaller
    /// diagonal half-edge. Throws FlipUndefined when both half-edges lie
    /// in one face (self-adjacent edge).
    Quad quad_of(EdgeId e) const {
        if (e < 0 || e >= num_edges()) {
            throw InvalidSurface("edge id out of range");
        }
        const HalfEdgeId he1 = edges_[e][0];
        const HalfEdgeId he2 = edges_[e][1];
        const FaceId t1 = face_of_[he1];
        const FaceId t2 = face_of_[he2];
        if (t1 == t2) {
            throw FlipUndefined("edge " + std::to_string(e) +
                                " has the same face on both sides; flip undefined");
        }
        const HalfEdgeId ha = next(he1), hb = next(ha);
        const HalfEdgeId hc = next(he2), hd = next(hc);
        return Quad{e,
                    t1,
                    t2,
                    {edge_of_[ha], edge_of_[hb], edge_of_[hc], edge_of_[hd]},
                    he1,
                    he2,
                    {ha, hb, hc, hd}};
    }

    /// Pure combinatorial flip: replaces the diagonal of the quad by the
    /// other one. Faces become t1' = (e', d, a) and t2' = (e', b, c) with
    /// ids reused; puncture labels transport along the unchanged sides.
    std::pair<Triangulation, FlipRecord> flip(EdgeId e) const {
        const Quad q = quad_of(e);
        auto faces = faces_;
        faces[q.t1] = {q.he1, q.side_halfedges[3], q.side_halfedges[0]};
        faces[q.t2] = {q.he2, q.side_halfedges[1], q.side_halfedges[2]};
        auto origin = origin_;
        origin[q.he1] = origin_[q.side_halfedges[1]]; // new diagonal start, t1' side
        origin[q.he2] = origin_[q.side_halfedges[3]]; // new diagonal start, t2' side
        Triangulation out(genus_, punctures_, std::move(faces), edges_, std::move(origin));
        return {std::move(out), FlipRecord{e, q.t1, q.t2, q}};
    }

    /// Orientation-preserving isomorphism of combinatorial maps, if any:
    /// a half-edge bijection commuting with next and twin.
    std::optional<MapIsomorphism> isomorphism_to(const Triangulation& other) const {
        if (other.num_halfedges() != num_halfedges() || other.genus_ != genus_ ||
            other.punctures_ != punctures_) {
            return std::nullopt;
        }
        for (HalfEdgeId image = 0; image < num_halfedges(); ++image) {
            if (auto iso = propagate_iso(other, image)) {
                return iso;
            }
        }
        return std::nullopt;
    }

    /// All self-isomorphisms (used for sign-pattern symmetry reduction).
    std::vector<MapIsomorphism> automorphisms() const {
        std::vector<MapIsomorphism> out;
        for (HalfEdgeId image = 0; image < num_halfedges(); ++image) {
            if (auto iso = propagate_iso(*this, image)) {
                out.push_back(std::move(*iso));
            }
        }
        return out;
    }

    /// Exact labeled state (face cycles + edge pairings), usable as a
    /// deduplication key. Two triangulations with equal keys are equal as
    /// labeled objects, not merely isomorphic.
    std::string labeled_key() const {
        std::string key;
        key.reserve(faces_.size() * 12 + edges_.size() * 8);
        for (const auto& f : faces_) {
            key += std::to_string(f[0]) + ',' + std::to_string(f[1]) + ',' +
                   std::to_string(f[2]) + ';';
        }
        key += '|';
        for (const auto& e : edges_) {
            key += std::to_string(e[0]) + ',' + std::to_string(e[1]) + ';';
        }
        return key;
    }

    bool same_labeled(const Triangulation& other) const {
        return faces_ == other.faces_ && edges_ == other.edges_;
    }

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["genus"] = genus_;
        j["punctures"] = punctures_;
        j["faces"] = faces_;
        j["edges"] = edges_;
        return j;
    }

    static Triangulation from_json(const nlohmann::json& j) {
        try {
            return Triangulation(j.at("genus").get<int>(), j.at("punctures").get<int>(),
                                 j.at("faces").get<std::vector<std::array<HalfEdgeId, 3>>>(),
                                 j.at("edges").get<std::vector<std::array<HalfEdgeId, 2>>>());
        } catch (const nlohmann::json::exception& e) {
            throw IoError(std::string("bad surface JSON: ") + e.what());
        }
    }

private:
    Triangulation(int genus, int punctures,
                  std::vector<std::array<HalfEdgeId, 3>> faces,
                  std::vector<std::array<HalfEdgeId, 2>> edges,
                  std::vector<PunctureId> transported_origins)
        : genus_(genus),
          punctures_(punctures),
          faces_(std::move(faces)),
          edges_(std::move(edges)),
          origin_(std::move(transported_origins)) {
        normalize();
        validate_and_build();
    }

    static void check_signature(int genus, int punctures) {
        if (genus < 0 || punctures < 1 || 2 * genus - 2 + punctures < 1) {
            throw InvalidSurface("need s >= 1 and 2g - 2 + s >= 1, got g = " +
                                 std::to_string(genus) + ", s = " + std::to_string(punctures));
        }
    }

    /// Cone a new puncture into the face of highest id: the face (h0,h1,h2)
    /// is replaced by three faces sharing a new interior vertex, adding
    /// three edges and six half-edges.
    static void cone_last_face(std::vector<std::array<HalfEdgeId, 3>>& faces,
                               std::vector<std::array<HalfEdgeId, 2>>& edges) {
        const auto f = faces.back();
        HalfEdgeId n = 0;
        for (const auto& face : faces) {
            n = std::max({n, face[0] + 1, face[1] + 1, face[2] + 1});
        }
        // Radial edge i joins the origin of f[i] to the new vertex:
        // up half-edge n+2i (toward the vertex), down half-edge n+2i+1.
        faces.back() = {f[0], n + 2, n + 1};
        faces.push_back({f[1], n + 4, n + 3});
        faces.push_back({f[2], n + 0, n + 5});
        edges.push_back({n + 0, n + 1});
        edges.push_back({n + 2, n + 3});
        edges.push_back({n + 4, n + 5});
    }

    void normalize() {
        for (auto& f : faces_) {
            // rotate the cycle so the smallest half-edge comes first
            int k = static_cast<int>(std::min_element(f.begin(), f.end()) - f.begin());
            f = {f[k], f[(k + 1) % 3], f[(k + 2) % 3]};
        }
        for (auto& e : edges_) {
            if (e[0] > e[1]) std::swap(e[0], e[1]);
        }
    }

    void validate_and_build() {
        check_signature(genus_, punctures_);
        const int k = kappa();
        if (static_cast<int>(faces_.size()) != 2 * k) {
            throw InvalidSurface("expected 2*kappa = " + std::to_string(2 * k) + " faces, got " +
                                 std::to_string(faces_.size()));
        }
        if (static_cast<int>(edges_.size()) != 3 * k) {
            throw InvalidSurface("expected 3*kappa = " + std::to_string(3 * k) + " edges, got " +
                                 std::to_string(edges_.size()));
        }
        const int n = 6 * k;
        next_.assign(n, -1);
        twin_.assign(n, -1);
        edge_of_.assign(n, -1);
        face_of_.assign(n, -1);

        for (FaceId f = 0; f < num_faces(); ++f) {
            for (int i = 0; i < 3; ++i) {
                const HalfEdgeId h = faces_[f][i];
                if (h < 0 || h >= n) throw InvalidSurface("half-edge id out of range");
                if (face_of_[h] != -1) throw InvalidSurface("half-edge in two face slots");
                face_of_[h] = f;
                next_[h] = faces_[f][(i + 1) % 3];
            }
        }
        for (EdgeId e = 0; e < num_edges(); ++e) {
            const auto [h1, h2] = edges_[e];
            if (h1 < 0 || h1 >= n || h2 < 0 || h2 >= n || h1 == h2) {
                throw InvalidSurface("bad edge pairing");
            }
            if (twin_[h1] != -1 || twin_[h2] != -1) {
                throw InvalidSurface("half-edge in two edge pairings");
            }
            twin_[h1] = h2;
            twin_[h2] = h1;
            edge_of_[h1] = e;
            edge_of_[h2] = e;
        }
        for (HalfEdgeId h = 0; h < n; ++h) {
            if (face_of_[h] == -1) throw InvalidSurface("half-edge missing from faces");
            if (twin_[h] == -1) throw InvalidSurface("half-edge missing from edges");
        }

        // Vertex orbits of h -> next(twin(h)). Orbit count must equal s,
        // which also forces V - E + F = 2 - 2g given the face/edge counts.
        std::vector<PunctureId> orbit(n, -1);
        PunctureId orbits = 0;
        for (HalfEdgeId h = 0; h < n; ++h) {
            if (orbit[h] != -1) continue;
            HalfEdgeId w = h;
            while (orbit[w] == -1) {
                orbit[w] = orbits;
                w = next_[twin_[w]];
            }
            if (w != h) throw InvalidSurface("vertex walk is not a permutation orbit");
            ++orbits;
        }
        if (orbits != punctures_) {
            throw InvalidSurface("vertex orbit count " + std::to_string(orbits) +
                                 " does not match punctures " + std::to_string(punctures_));
        }
        if (origin_.empty()) {
            origin_ = std::move(orbit); // orbit ids are already ordered by least half-edge
        } else {
            // Transported labels must be constant on orbits and hit 0..s-1.
            std::vector<PunctureId> seen(punctures_, -1);
            for (HalfEdgeId h = 0; h < n; ++h) {
                const PunctureId label = origin_[h];
                if (label < 0 || label >= punctures_) {
                    throw InvalidSurface("transported puncture label out of range");
                }
                if (seen[label] == -1) {
                    seen[label] = orbit[h];
                } else if (seen[label] != orbit[h]) {
                    throw InvalidSurface("transported puncture labels split an orbit");
                }
            }
        }

        // Face-adjacency connectivity via twins.
        std::vector<char> reached(num_faces(), 0);
        std::queue<FaceId> bfs;
        bfs.push(0);
        reached[0] = 1;
        int count = 1;
        while (!bfs.empty()) {
            const FaceId f = bfs.front();
            bfs.pop();
            for (const HalfEdgeId h : faces_[f]) {
                const FaceId g = face_of_[twin_[h]];
                if (!reached[g]) {
                    reached[g] = 1;
                    ++count;
                    bfs.push(g);
                }
            }
        }
        if (count != num_faces()) {
            throw InvalidSurface("face-adjacency graph is disconnected");
        }
    }

    /// Try to extend {0 -> image} to a full isomorphism onto `other`.
    std::optional<MapIsomorphism> propagate_iso(const Triangulation& other,
                                                HalfEdgeId image) const {
        const int n = num_halfedges();
        std::vector<HalfEdgeId> psi(n, -1);
        std::vector<char> hit(n, 0);
        psi[0] = image;
        hit[image] = 1;
        std::queue<HalfEdgeId> work;
        work.push(0);
        auto assign = [&](HalfEdgeId from, HalfEdgeId to) {
            if (psi[from] == -1) {
                if (hit[to]) return false;
                psi[from] = to;
                hit[to] = 1;
                work.push(from);
                return true;
            }
            return psi[from] == to;
        };
        while (!work.empty()) {
            const HalfEdgeId h = work.front();
            work.pop();
            if (!assign(next_[h], other.next_[psi[h]])) return std::nullopt;
            if (!assign(twin_[h], other.twin_[psi[h]])) return std::nullopt;
        }
        for (HalfEdgeId h = 0; h < n; ++h) {
            if (psi[h] == -1) return std::nullopt; // disconnected maps never reach here
        }
        MapIsomorphism iso;
        iso.halfedges = std::move(psi);
        iso.edges.assign(num_edges(), -1);
        iso.faces.assign(num_faces(), -1);
        iso.punctures.assign(punctures_, -1);
        for (HalfEdgeId h = 0; h < n; ++h) {
            iso.edges[edge_of_[h]] = other.edge_of_[iso.halfedges[h]];
            iso.faces[face_of_[h]] = other.face_of_[iso.halfedges[h]];
            const PunctureId p = origin_[h];
            const PunctureId q = other.origin_[iso.halfedges[h]];
            if (iso.punctures[p] == -1) {
                iso.punctures[p] = q;
            } else if (iso.punctures[p] != q) {
                return std::nullopt;
            }
        }
        return iso;
    }

    int genus_;
    int punctures_;
    std::vector<std::array<HalfEdgeId, 3>> faces_;
    std::vector<std::array<HalfEdgeId, 2>> edges_;
    std::vector<HalfEdgeId> next_;
    std::vector<HalfEdgeId> twin_;
    std::vector<EdgeId> edge_of_;
    std::vector<FaceId> face_of_;
    std::vector<PunctureId> origin_;
};

} // namespace penner
