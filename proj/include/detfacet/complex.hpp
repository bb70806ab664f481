#pragma once

// Simplicial-complex combinatorics: clique decomposition, closedness,
// block adjacent structure and intersection graphs.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "detfacet/error.hpp"

namespace detfacet {

using Facet = std::vector<int>;

inline std::string facet_to_string(const Facet& f) {
    bool compact = std::all_of(f.begin(), f.end(), [](int v) { return v < 10; });
    std::string out = "{";
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (i && !compact) out += ",";
        out += std::to_string(f[i]);
    }
    return out + "}";
}

inline bool is_subset(const std::vector<int>& a, const std::vector<int>& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

inline std::vector<int> set_intersection(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

// All k-subsets of `items`, in lexicographic order of positions.
template <class T>
std::vector<std::vector<T>> k_subsets(const std::vector<T>& items, std::size_t k) {
    std::vector<std::vector<T>> out;
    if (k > items.size()) return out;
    std::vector<std::size_t> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
        std::vector<T> s;
        for (auto i : idx) s.push_back(items[i]);
        out.push_back(std::move(s));
        std::size_t p = k;
        while (p > 0 && idx[p - 1] == items.size() - k + p - 1) --p;
        if (p == 0) break;
        ++idx[p - 1];
        for (std::size_t q = p; q < k; ++q) idx[q] = idx[q - 1] + 1;
    }
    return out;
}

// Facets on positive vertex labels, inside a matrix with `rows` rows.
class SimplicialComplex {
public:
    SimplicialComplex(int rows, std::vector<Facet> facets, std::vector<int> universe = {}) : rows_(rows) {
        if (rows < 1) throw StructuralError("complex needs a positive row count");
        std::set<int> verts(universe.begin(), universe.end());
        for (auto& f : facets) {
            std::sort(f.begin(), f.end());
            if (std::adjacent_find(f.begin(), f.end()) != f.end())
                throw StructuralError("facet " + facet_to_string(f) + " repeats a vertex");
            if (f.size() < 2) throw StructuralError("facet " + facet_to_string(f) + " has fewer than 2 vertices");
            if (f.size() > static_cast<std::size_t>(rows))
                throw StructuralError("facet " + facet_to_string(f) + " is larger than the row count " +
                                      std::to_string(rows));
            if (f.front() < 1) throw StructuralError("vertex labels must be positive");
            if (std::find(facets_.begin(), facets_.end(), f) != facets_.end()) continue;
            facets_.push_back(f);
            verts.insert(f.begin(), f.end());
        }
        for (int v : verts)
            if (v < 1) throw StructuralError("vertex labels must be positive");
        for (std::size_t i = 0; i < facets_.size(); ++i)
            for (std::size_t j = 0; j < facets_.size(); ++j)
                if (i != j && is_subset(facets_[i], facets_[j]))
                    throw StructuralError("facet " + facet_to_string(facets_[i]) + " is contained in " +
                                          facet_to_string(facets_[j]));
        if (facets_.empty()) throw StructuralError("complex has no facets");
        vertices_.assign(verts.begin(), verts.end());
    }

    int rows() const { return rows_; }
    const std::vector<Facet>& facets() const { return facets_; }
    const std::vector<int>& vertices() const { return vertices_; }
    int max_label() const { return vertices_.empty() ? 0 : vertices_.back(); }
    int dimension() const {
        std::size_t d = 0;
        for (const auto& f : facets_) d = std::max(d, f.size());
        return static_cast<int>(d) - 1;
    }
    bool is_pure() const {
        return std::all_of(facets_.begin(), facets_.end(),
                           [&](const Facet& f) { return f.size() == facets_.front().size(); });
    }

    // Subcomplex of the facets inside `vertex_set`.
    SimplicialComplex restricted_to(const std::vector<int>& vertex_set) const {
        std::vector<Facet> fs;
        for (const auto& f : facets_)
            if (is_subset(f, vertex_set)) fs.push_back(f);
        return SimplicialComplex(rows_, fs);
    }

    SimplicialComplex relabeled(const std::map<int, int>& labels) const {
        std::vector<Facet> fs;
        for (auto f : facets_) {
            for (auto& v : f) v = labels.at(v);
            fs.push_back(f);
        }
        return SimplicialComplex(rows_, fs);
    }

    bool operator==(const SimplicialComplex& other) const {
        if (rows_ != other.rows_ || vertices_ != other.vertices_) return false;
        auto a = facets_, b = other.facets_;
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        return a == b;
    }

private:
    int rows_;
    std::vector<Facet> facets_;
    std::vector<int> vertices_;
};

// The full `dim`-skeleton of the simplex on `vertices`, all of whose
// facets are facets of the parent complex.
struct Clique {
    std::vector<int> vertices;
    int dim = 0;

    std::vector<Facet> facets() const { return k_subsets(vertices, static_cast<std::size_t>(dim + 1)); }
    bool operator==(const Clique&) const = default;
};

struct CliqueDecomposition {
    std::vector<Clique> cliques;
};

inline CliqueDecomposition clique_decomposition(const SimplicialComplex& complex) {
    std::map<std::size_t, std::set<Facet>> by_size;
    for (const auto& f : complex.facets()) by_size[f.size()].insert(f);

    CliqueDecomposition out;
    for (const auto& [size, facets] : by_size) {
        std::set<int> vs;
        for (const auto& f : facets) vs.insert(f.begin(), f.end());
        std::vector<int> verts(vs.begin(), vs.end());

        // Every vertex set all of whose `size`-subsets are facets.
        std::vector<std::vector<int>> found;
        std::vector<int> current;
        std::function<void(std::size_t)> extend = [&](std::size_t start) {
            if (current.size() >= size) found.push_back(current);
            for (std::size_t i = start; i < verts.size(); ++i) {
                int v = verts[i];
                bool ok = true;
                if (current.size() + 1 >= size) {
                    for (auto sub : k_subsets(current, size - 1)) {
                        sub.push_back(v);
                        std::sort(sub.begin(), sub.end());
                        if (!facets.count(sub)) {
                            ok = false;
                            break;
                        }
                    }
                }
                if (!ok) continue;
                current.push_back(v);
                extend(i + 1);
                current.pop_back();
            }
        };
        extend(0);

        for (const auto& w : found) {
            bool maximal = std::none_of(found.begin(), found.end(), [&](const std::vector<int>& other) {
                return other.size() > w.size() && is_subset(w, other);
            });
            if (maximal) out.cliques.push_back({w, static_cast<int>(size) - 1});
        }
    }
    std::sort(out.cliques.begin(), out.cliques.end(), [](const Clique& a, const Clique& b) {
        if (a.vertices.front() != b.vertices.front()) return a.vertices.front() < b.vertices.front();
        if (a.vertices.size() != b.vertices.size()) return a.vertices.size() < b.vertices.size();
        return a.vertices < b.vertices;
    });
    return out;
}

struct ClosednessWitness {
    std::size_t clique_b = 0;
    std::size_t clique_c = 0;
    Facet b;
    Facet c;
    int k = 0;  // 1-based position in b
    int l = 0;  // 1-based position in c
    int vertex = 0;
};

struct ClosednessResult {
    bool closed = true;
    std::optional<ClosednessWitness> witness;
};

namespace detail {

// The position-avoidance test for one facet pair, |b| <= |c|.
inline std::optional<std::pair<int, int>> closedness_violation(const Facet& b, const Facet& c, int m) {
    int t = static_cast<int>(b.size()), s = static_cast<int>(c.size());
    for (int k = 1; k <= t; ++k) {
        int lo = std::max(1, k - m + s);
        int hi = std::min(s, m - t + k);
        for (int l = lo; l <= hi; ++l)
            if (b[static_cast<std::size_t>(k - 1)] == c[static_cast<std::size_t>(l - 1)]) return std::pair{k, l};
    }
    return std::nullopt;
}

inline ClosednessResult closedness_of_cliques(const std::vector<std::vector<Facet>>& clique_facets, int m) {
    for (std::size_t i = 0; i < clique_facets.size(); ++i)
        for (std::size_t j = i + 1; j < clique_facets.size(); ++j)
            for (const auto& f : clique_facets[i])
                for (const auto& g : clique_facets[j]) {
                    bool swap = f.size() > g.size();
                    const Facet& b = swap ? g : f;
                    const Facet& c = swap ? f : g;
                    if (auto v = closedness_violation(b, c, m)) {
                        ClosednessWitness w;
                        w.clique_b = swap ? j : i;
                        w.clique_c = swap ? i : j;
                        w.b = b;
                        w.c = c;
                        w.k = v->first;
                        w.l = v->second;
                        w.vertex = b[static_cast<std::size_t>(v->first - 1)];
                        return {false, w};
                    }
                }
    return {};
}

} // namespace detail

inline ClosednessResult is_closed(const SimplicialComplex& complex, const CliqueDecomposition& cd) {
    std::vector<std::vector<Facet>> fs;
    for (const auto& c : cd.cliques) fs.push_back(c.facets());
    return detail::closedness_of_cliques(fs, complex.rows());
}

inline ClosednessResult is_closed(const SimplicialComplex& complex) {
    return is_closed(complex, clique_decomposition(complex));
}

// First relabeling (in lexicographic order of permutations of the vertex
// labels) under which the complex is closed. Maps old label to new label.
inline std::optional<std::map<int, int>> find_closed_labeling(const SimplicialComplex& complex,
                                                              std::size_t bound = 9) {
    const auto& verts = complex.vertices();
    if (verts.size() > bound)
        throw ResourceError("closed-labeling search over " + std::to_string(verts.size()) +
                            " vertices exceeds the bound " + std::to_string(bound) +
                            "; relabel manually or raise --limit-perm");
    auto cd = clique_decomposition(complex);
    std::map<int, std::size_t> index;
    for (std::size_t i = 0; i < verts.size(); ++i) index[verts[i]] = i;
    std::vector<std::vector<Facet>> base;
    for (const auto& c : cd.cliques) base.push_back(c.facets());

    std::vector<int> image = verts;
    std::vector<std::vector<Facet>> relabeled = base;
    do {
        for (std::size_t c = 0; c < base.size(); ++c)
            for (std::size_t f = 0; f < base[c].size(); ++f) {
                auto& out = relabeled[c][f];
                for (std::size_t p = 0; p < out.size(); ++p) out[p] = image[index[base[c][f][p]]];
                std::sort(out.begin(), out.end());
            }
        if (detail::closedness_of_cliques(relabeled, complex.rows()).closed) {
            std::map<int, int> labels;
            for (std::size_t i = 0; i < verts.size(); ++i) labels[verts[i]] = image[i];
            return labels;
        }
    } while (std::next_permutation(image.begin(), image.end()));
    return std::nullopt;
}

// A maximal simplex skeleton inside a block adjacent component, in
// positions (1-based) of the component's sorted vertex list.
struct SubBlock {
    int first = 0;
    int last = 0;
    int dim = 0;
    std::vector<int> vertices;

    int width() const { return last - first + 1; }
};

// One block adjacent complex: consecutive sub-blocks overlap in exactly
// m-1 positions.
struct BlockComponent {
    std::vector<int> vertices;  // sorted labels; position p is vertices[p-1]
    std::vector<SubBlock> blocks;
    int overlap_prev = 0;       // t_i with the previous component, 0 for the first
    std::vector<Facet> facets;

    int size() const { return static_cast<int>(vertices.size()); }
    int label(int position) const { return vertices.at(static_cast<std::size_t>(position - 1)); }
    int position(int label) const {
        auto it = std::lower_bound(vertices.begin(), vertices.end(), label);
        if (it == vertices.end() || *it != label) return 0;
        return static_cast<int>(it - vertices.begin()) + 1;
    }
};

// Union of block adjacent components whose consecutive members overlap in
// 0 < t_i < m vertices.
struct BlockStructure {
    int rows = 0;
    std::vector<int> vertices;
    std::vector<BlockComponent> components;
};

namespace detail {

inline int find_root(std::vector<int>& parent, int x) {
    while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
    return x;
}

// Orders the cliques of one chain and checks block adjacency.
inline BlockComponent make_block_component(std::vector<Clique> cliques, int m) {
    BlockComponent comp;
    std::set<int> vs;
    for (const auto& c : cliques) vs.insert(c.vertices.begin(), c.vertices.end());
    comp.vertices.assign(vs.begin(), vs.end());
    std::sort(cliques.begin(), cliques.end(), [](const Clique& a, const Clique& b) {
        return std::pair(a.vertices.front(), a.vertices.back()) < std::pair(b.vertices.front(), b.vertices.back());
    });
    for (const auto& c : cliques) {
        SubBlock b;
        b.first = comp.position(c.vertices.front());
        b.last = comp.position(c.vertices.back());
        b.dim = c.dim;
        b.vertices = c.vertices;
        if (b.width() != static_cast<int>(c.vertices.size()))
            throw StructuralError("sub-block " + facet_to_string(c.vertices) +
                                  " is not a segment of the component's sorted vertices");
        for (auto f : c.facets()) comp.facets.push_back(f);
        comp.blocks.push_back(std::move(b));
    }
    for (std::size_t i = 0; i < comp.blocks.size(); ++i) {
        const auto& b = comp.blocks[i];
        if (i == 0) {
            if (b.first != 1) throw StructuralError("first sub-block does not start the component");
            continue;
        }
        const auto& prev = comp.blocks[i - 1];
        int overlap = std::max(0, prev.last - b.first + 1);
        if (overlap != m - 1 || b.last <= prev.last)
            throw StructuralError("not block adjacent: sub-blocks " + facet_to_string(prev.vertices) + " and " +
                                  facet_to_string(b.vertices) + " overlap in " + std::to_string(overlap) +
                                  " vertices (need " + std::to_string(m - 1) + ")");
    }
    if (comp.blocks.back().last != comp.size())
        throw StructuralError("last sub-block does not end the component");
    return comp;
}

} // namespace detail

// Groups the cliques of a complex into maximal chains linked by overlaps
// of m-1 vertices, each checked to be block adjacent. All cliques must
// have dimension m-1.
inline std::vector<BlockComponent> block_adjacent_chains(const SimplicialComplex& complex) {
    int m = complex.rows();
    auto cd = clique_decomposition(complex);
    for (const auto& c : cd.cliques)
        if (c.dim != m - 1)
            throw StructuralError("clique " + facet_to_string(c.vertices) + " has dimension " +
                                  std::to_string(c.dim) + " < " + std::to_string(m - 1) +
                                  "; block adjacent components are (m-1)-dimensional");
    std::size_t r = cd.cliques.size();
    std::vector<int> parent(r);
    std::iota(parent.begin(), parent.end(), 0);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = i + 1; j < r; ++j) {
            auto common = set_intersection(cd.cliques[i].vertices, cd.cliques[j].vertices);
            if (static_cast<int>(common.size()) >= m)
                throw StructuralError("cliques " + facet_to_string(cd.cliques[i].vertices) + " and " +
                                      facet_to_string(cd.cliques[j].vertices) + " overlap in " +
                                      std::to_string(common.size()) + " vertices");
            if (static_cast<int>(common.size()) == m - 1)
                parent[static_cast<std::size_t>(detail::find_root(parent, static_cast<int>(i)))] =
                    detail::find_root(parent, static_cast<int>(j));
        }
    std::map<int, std::vector<Clique>> groups;
    for (std::size_t i = 0; i < r; ++i) groups[detail::find_root(parent, static_cast<int>(i))].push_back(cd.cliques[i]);
    std::vector<BlockComponent> chains;
    for (auto& [root, cliques] : groups) chains.push_back(detail::make_block_component(std::move(cliques), m));
    std::sort(chains.begin(), chains.end(), [](const BlockComponent& a, const BlockComponent& b) {
        return std::pair(a.vertices.front(), a.vertices.back()) < std::pair(b.vertices.front(), b.vertices.back());
    });
    return chains;
}

// Decomposition of the whole complex as a union of block adjacent
// components laid out along its sorted vertex list.
inline BlockStructure block_structure(const SimplicialComplex& complex) {
    int m = complex.rows();
    BlockStructure bs;
    bs.rows = m;
    bs.vertices = complex.vertices();
    bs.components = block_adjacent_chains(complex);
    auto global_pos = [&](int label) {
        return static_cast<int>(std::lower_bound(bs.vertices.begin(), bs.vertices.end(), label) - bs.vertices.begin()) + 1;
    };
    for (std::size_t i = 0; i < bs.components.size(); ++i) {
        auto& comp = bs.components[i];
        int first = global_pos(comp.vertices.front());
        int last = global_pos(comp.vertices.back());
        if (last - first + 1 != comp.size())
            throw StructuralError("component " + facet_to_string(comp.vertices) +
                                  " is not a segment of the complex's sorted vertices");
        if (i == 0) continue;
        const auto& prev = bs.components[i - 1];
        int prev_last = global_pos(prev.vertices.back());
        int overlap = std::max(0, prev_last - first + 1);
        if (overlap <= 0 || overlap >= m || last <= prev_last)
            throw StructuralError("components " + facet_to_string(prev.vertices) + " and " +
                                  facet_to_string(comp.vertices) + " overlap in " + std::to_string(overlap) +
                                  " vertices (need 0 < t < " + std::to_string(m) + ")");
        comp.overlap_prev = overlap;
    }
    return bs;
}

struct IntersectionGraph {
    int order = 0;
    std::vector<std::pair<int, int>> edges;  // 1-based, i < j
    bool is_forest = true;
    bool is_connected = true;
    bool is_cactus = true;

    bool is_tree() const { return is_forest && is_connected; }
};

inline IntersectionGraph intersection_graph(const std::vector<std::vector<int>>& vertex_sets) {
    IntersectionGraph g;
    int r = static_cast<int>(vertex_sets.size());
    g.order = r;
    for (int i = 0; i < r; ++i)
        for (int j = i + 1; j < r; ++j)
            if (!set_intersection(vertex_sets[static_cast<std::size_t>(i)], vertex_sets[static_cast<std::size_t>(j)]).empty())
                g.edges.emplace_back(i + 1, j + 1);

    std::vector<int> parent(static_cast<std::size_t>(r));
    std::iota(parent.begin(), parent.end(), 0);
    for (auto [a, b] : g.edges) {
        int ra = detail::find_root(parent, a - 1), rb = detail::find_root(parent, b - 1);
        if (ra == rb) g.is_forest = false;
        else parent[static_cast<std::size_t>(ra)] = rb;
    }
    std::set<int> roots;
    for (int i = 0; i < r; ++i) roots.insert(detail::find_root(parent, i));
    g.is_connected = roots.size() <= 1;

    // Cactus: connected, and every biconnected block is a single edge or a
    // cycle (as many edges as vertices).
    std::vector<std::vector<std::pair<int, int>>> adj(static_cast<std::size_t>(r));
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        adj[static_cast<std::size_t>(g.edges[e].first - 1)].emplace_back(g.edges[e].second - 1, static_cast<int>(e));
        adj[static_cast<std::size_t>(g.edges[e].second - 1)].emplace_back(g.edges[e].first - 1, static_cast<int>(e));
    }
    std::vector<int> disc(static_cast<std::size_t>(r), -1), low(static_cast<std::size_t>(r), 0);
    std::vector<int> edge_stack;
    int timer = 0;
    bool cactus = g.is_connected;
    std::function<void(int, int)> dfs = [&](int u, int parent_edge) {
        disc[static_cast<std::size_t>(u)] = low[static_cast<std::size_t>(u)] = timer++;
        for (auto [v, e] : adj[static_cast<std::size_t>(u)]) {
            if (e == parent_edge) continue;
            if (disc[static_cast<std::size_t>(v)] == -1) {
                edge_stack.push_back(e);
                dfs(v, e);
                low[static_cast<std::size_t>(u)] = std::min(low[static_cast<std::size_t>(u)], low[static_cast<std::size_t>(v)]);
                if (low[static_cast<std::size_t>(v)] >= disc[static_cast<std::size_t>(u)]) {
                    std::set<int> bverts;
                    std::size_t bedges = 0;
                    while (true) {
                        int f = edge_stack.back();
                        edge_stack.pop_back();
                        ++bedges;
                        bverts.insert(g.edges[static_cast<std::size_t>(f)].first);
                        bverts.insert(g.edges[static_cast<std::size_t>(f)].second);
                        if (f == e) break;
                    }
                    if (bedges > 1 && bedges != bverts.size()) cactus = false;
                }
            } else if (disc[static_cast<std::size_t>(v)] < disc[static_cast<std::size_t>(u)]) {
                edge_stack.push_back(e);
                low[static_cast<std::size_t>(u)] = std::min(low[static_cast<std::size_t>(u)], disc[static_cast<std::size_t>(v)]);
            }
        }
    };
    for (int i = 0; i < r; ++i)
        if (disc[static_cast<std::size_t>(i)] == -1) dfs(i, -1);
    g.is_cactus = cactus;
    return g;
}

inline IntersectionGraph intersection_graph(const std::vector<SimplicialComplex>& components) {
    std::vector<std::vector<int>> vs;
    for (const auto& c : components) vs.push_back(c.vertices());
    return intersection_graph(vs);
}

struct PairConditionDetail {
    int i = 0;  // 1-based component indices, i < j
    int j = 0;
    std::vector<int> shared;
    bool cond_b = true;
    bool cond_c = true;
    // How (c) was met: which component plays Δ_i, which alternative, and t.
    std::string explanation;
};

struct ForestConditionReport {
    bool cond_a = true;
    bool cond_b = true;
    bool cond_c = true;
    std::vector<std::vector<int>> failing_triples;  // 1-based
    std::vector<PairConditionDetail> pairs;          // every intersecting pair
};

namespace detail {

// One orientation of the inclusion test: `first` in the role of Δ_i.
inline std::optional<std::string> condition_c_holds(const std::vector<int>& first, const std::vector<int>& second,
                                                    const std::vector<int>& shared, int m) {
    auto pos = [](const std::vector<int>& vs, int label) {
        return static_cast<int>(std::lower_bound(vs.begin(), vs.end(), label) - vs.begin()) + 1;
    };
    int n1 = static_cast<int>(first.size()), n2 = static_cast<int>(second.size());
    for (int t = 0; t <= m - 3; ++t) {
        bool alt1 = true, alt2 = true;
        for (int label : shared) {
            int p1 = pos(first, label), p2 = pos(second, label);
            // {u_i + t} ∩ [v_j + t - (m-3), v_j]
            alt1 = alt1 && p1 == 1 + t && p2 >= n2 + t - (m - 3) && p2 <= n2;
            // {v_i - t} ∩ [u_j, u_j + m - t - 3]
            alt2 = alt2 && p1 == n1 - t && p2 >= 1 && p2 <= 1 + m - t - 3;
        }
        if (alt1) return "first alternative, t=" + std::to_string(t);
        if (alt2) return "second alternative, t=" + std::to_string(t);
    }
    return std::nullopt;
}

} // namespace detail

// Conditions (a) empty triple intersections, (b) pairwise intersections
// of at most one vertex, (c) the position inclusions, evaluated on each
// component's sorted vertex list (both orientations of a pair).
inline ForestConditionReport check_forest_conditions(const std::vector<std::vector<int>>& components, int m) {
    ForestConditionReport rep;
    int r = static_cast<int>(components.size());
    for (int i = 0; i < r; ++i)
        for (int j = i + 1; j < r; ++j)
            for (int k = j + 1; k < r; ++k) {
                auto ij = set_intersection(components[static_cast<std::size_t>(i)], components[static_cast<std::size_t>(j)]);
                if (!set_intersection(ij, components[static_cast<std::size_t>(k)]).empty()) {
                    rep.cond_a = false;
                    rep.failing_triples.push_back({i + 1, j + 1, k + 1});
                }
            }
    for (int i = 0; i < r; ++i)
        for (int j = i + 1; j < r; ++j) {
            const auto& a = components[static_cast<std::size_t>(i)];
            const auto& b = components[static_cast<std::size_t>(j)];
            auto shared = set_intersection(a, b);
            if (shared.empty()) continue;
            PairConditionDetail d;
            d.i = i + 1;
            d.j = j + 1;
            d.shared = shared;
            d.cond_b = shared.size() <= 1;
            if (auto how = detail::condition_c_holds(a, b, shared, m)) {
                d.explanation = "component " + std::to_string(i + 1) + " as first: " + *how;
            } else if (auto how2 = detail::condition_c_holds(b, a, shared, m)) {
                d.explanation = "component " + std::to_string(j + 1) + " as first: " + *how2;
            } else {
                d.cond_c = false;
                d.explanation = "no t in [0, m-3] satisfies either inclusion";
            }
            rep.cond_b = rep.cond_b && d.cond_b;
            rep.cond_c = rep.cond_c && d.cond_c;
            rep.pairs.push_back(std::move(d));
        }
    return rep;
}

} // namespace detfacet
