#pragma once

// Complexes used across the test binaries.

#include <initializer_list>
#include <random>
#include <string>
#include <vector>

#include "detfacet/complex.hpp"
#include "detfacet/detideal.hpp"

namespace examples {

using detfacet::Facet;
using detfacet::SimplicialComplex;

inline std::vector<Facet> skeleton(const std::vector<int>& vertices, int size) {
    return detfacet::k_subsets(vertices, static_cast<std::size_t>(size));
}

inline std::vector<Facet> concat(std::initializer_list<std::vector<Facet>> parts) {
    std::vector<Facet> out;
    for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
    return out;
}

inline SimplicialComplex four_cliques() {
    return SimplicialComplex(3, {{1, 2, 3}, {1, 2, 4}, {1, 3, 4}, {2, 3, 4}, {3, 4, 5}, {5, 6, 7}, {7, 8}, {8, 9}, {7, 9}});
}

inline SimplicialComplex block_chain() { return SimplicialComplex(3, {{1, 2, 3}, {1, 2, 4}, {1, 3, 4}, {2, 3, 4}, {3, 4, 5}, {4, 5, 6}, {5, 6, 7}}); }

inline SimplicialComplex union_example() {
    return SimplicialComplex(3, {{1, 2, 3}, {3, 4, 5}, {4, 5, 6}, {4, 6, 7}, {4, 5, 7}, {5, 6, 7}, {6, 7, 8}, {7, 8, 9}});
}

inline SimplicialComplex skeleton_strip() { return SimplicialComplex(3, {{1, 2, 3}, {1, 3, 4}, {1, 2, 4}, {2, 3, 4}, {4, 5, 6}, {5, 6, 7}}); }

inline SimplicialComplex three_blocks() {
    return SimplicialComplex(4, {{1, 2, 3, 4}, {2, 3, 4, 5}, {4, 6, 7, 8}, {6, 7, 8, 9}, {5, 9, 10, 11}});
}

inline std::vector<std::vector<int>> three_blocks_components() { return {{1, 2, 3, 4, 5}, {4, 6, 7, 8, 9}, {5, 9, 10, 11}}; }

inline SimplicialComplex clique_tree() {
    return SimplicialComplex(4, concat({{{1, 2, 3, 4}}, skeleton({2, 5, 6, 7}, 3), {{4, 8, 9}}}));
}

inline SimplicialComplex cactus() {
    return SimplicialComplex(3, concat({{{1, 2, 3}, {2, 3, 4}, {4, 5, 6}, {5, 6, 7}, {3, 7, 8}, {7, 8, 9}},
                                        skeleton({9, 10, 11, 12}, 3)}));
}

inline SimplicialComplex closed_path() { return SimplicialComplex(3, {{1, 2}, {2, 3, 4}, {4, 5, 6}, {6, 7}}); }

inline SimplicialComplex open_path() { return SimplicialComplex(3, {{1, 2}, {1, 3, 4}, {4, 5, 6}, {5, 7}}); }

// Blocks of consecutive labels, each a full (m-1)-skeleton of width >= m,
// consecutive blocks sharing m-1 labels.
inline SimplicialComplex random_block_adjacent(std::mt19937_64& rng, int m, int max_n, int first = 1) {
    std::vector<Facet> facets;
    int start = first, end = 0;
    std::uniform_int_distribution<int> extra(0, 2);
    while (true) {
        int width = m + extra(rng);
        end = start + width - 1;
        if (end - first + 1 > max_n) {
            if (facets.empty()) end = start + m - 1;
            else break;
        }
        std::vector<int> seg;
        for (int v = start; v <= end; ++v) seg.push_back(v);
        for (auto& f : skeleton(seg, m)) facets.push_back(f);
        start = end - (m - 2);
        if (end - first + 1 >= max_n) break;
        if (std::uniform_int_distribution<int>(0, 3)(rng) == 0) break;
    }
    std::sort(facets.begin(), facets.end());
    facets.erase(std::unique(facets.begin(), facets.end()), facets.end());
    return SimplicialComplex(m, facets);
}

template <class F>
detfacet::GeneratorSet<F> generators(const detfacet::Workspace<F>& ws, std::initializer_list<const char*> minors) {
    detfacet::GeneratorSet<F> out(ws);
    detfacet::MinorExpander<F> ex(ws);
    for (const char* s : minors) out.add(detfacet::MinorSpec::parse(s, ws.rows()), detfacet::Provenance::Mixed, ex);
    return out;
}

template <class F>
detfacet::GeneratorSet<F> all_minors(const detfacet::Workspace<F>& ws, int size, const std::vector<int>& cols) {
    detfacet::GeneratorSet<F> out(ws);
    detfacet::MinorExpander<F> ex(ws);
    std::vector<int> rows;
    for (int i = 1; i <= ws.rows(); ++i) rows.push_back(i);
    for (const auto& r : detfacet::k_subsets(rows, static_cast<std::size_t>(size)))
        for (const auto& c : detfacet::k_subsets(cols, static_cast<std::size_t>(size)))
            out.add(detfacet::MinorSpec(r, c), detfacet::Provenance::Mixed, ex);
    return out;
}

template <class F>
detfacet::GeneratorSet<F> plus(const detfacet::Workspace<F>& ws, std::initializer_list<const detfacet::GeneratorSet<F>*> parts) {
    detfacet::GeneratorSet<F> out(ws);
    for (const auto* p : parts) out.merge(*p);
    return out;
}

} // namespace examples
