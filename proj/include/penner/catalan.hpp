#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <stdexcept>
#include <utility>
#include <vector>

namespace penner {

/// Diagonal of a convex polygon, as an ordered vertex pair (i < j).
using PolygonDiagonal = std::pair<int, int>;

/// All triangulations of a convex n-gon, each as the sorted set of its
/// n - 3 pairwise non-crossing diagonals. The count is the Catalan number
/// C_{n-2}. Intended for desk-scale n (the count grows exponentially).
inline std::vector<std::vector<PolygonDiagonal>> enumerate_polygon_triangulations(int n) {
    if (n < 3) {
        throw std::invalid_argument("polygon needs at least 3 vertices");
    }
    // Triangulations of the sub-polygon on vertices i..j, recursing on the
    // apex of the triangle over the chord (i, j).
    struct Rec {
        std::vector<std::vector<PolygonDiagonal>> operator()(int i, int j) const {
            std::vector<std::vector<PolygonDiagonal>> out;
            if (j - i < 2) {
                out.push_back({});
                return out;
            }
            for (int k = i + 1; k < j; ++k) {
                const auto left = (*this)(i, k);
                const auto right = (*this)(k, j);
                for (const auto& l : left) {
                    for (const auto& r : right) {
                        std::vector<PolygonDiagonal> diags;
                        diags.reserve(l.size() + r.size() + 2);
                        if (k - i >= 2) diags.emplace_back(i, k);
                        if (j - k >= 2) diags.emplace_back(k, j);
                        diags.insert(diags.end(), l.begin(), l.end());
                        diags.insert(diags.end(), r.begin(), r.end());
                        std::sort(diags.begin(), diags.end());
                        out.push_back(std::move(diags));
                    }
                }
            }
            return out;
        }
    };
    return Rec{}(0, n - 1);
}

/// Exact Catalan number C_m = binom(2m, m) / (m + 1).
inline boost::multiprecision::cpp_int catalan_number(int m) {
    using boost::multiprecision::cpp_int;
    cpp_int binom = 1;
    for (int i = 1; i <= m; ++i) {
        binom = binom * (m + i) / i; // stays integral at every step
    }
    return binom / (m + 1);
}

} // namespace penner
