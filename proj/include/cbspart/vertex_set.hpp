#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace cbspart {

/// Sorted, duplicate-free list of 0-based vertex indices.
using VertexSet = std::vector<int>;

inline bool is_sorted_unique(const VertexSet& s) {
    for (std::size_t k = 1; k < s.size(); ++k)
        if (s[k] <= s[k - 1]) return false;
    return true;
}

inline void check_vertex_set(const VertexSet& s, int n, const char* what) {
    if (s.empty()) throw std::invalid_argument(std::string(what) + ": empty vertex set");
    if (!is_sorted_unique(s))
        throw std::invalid_argument(std::string(what) + ": vertex set not sorted/unique");
    if (s.front() < 0 || s.back() >= n)
        throw std::invalid_argument(std::string(what) + ": vertex index out of range");
}

/// Checks {I, J} is a bipartition of [0, n): disjoint, covering, both nonempty.
inline void check_bipartition(const VertexSet& i_set, const VertexSet& j_set, int n,
                              const char* what) {
    check_vertex_set(i_set, n, what);
    check_vertex_set(j_set, n, what);
    if (static_cast<int>(i_set.size() + j_set.size()) != n)
        throw std::invalid_argument(std::string(what) + ": sets do not cover all vertices");
    VertexSet merged(i_set.size() + j_set.size());
    std::merge(i_set.begin(), i_set.end(), j_set.begin(), j_set.end(), merged.begin());
    for (std::size_t k = 1; k < merged.size(); ++k)
        if (merged[k] == merged[k - 1])
            throw std::invalid_argument(std::string(what) + ": sets overlap");
}

}  // namespace cbspart
