#pragma once

// Prime sequences, candidate minimal primes and their certification.

#include <algorithm>
#include <chrono>
#include <functional>
#include <future>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "detfacet/complex.hpp"
#include "detfacet/detideal.hpp"
#include "detfacet/groebner.hpp"

namespace detfacet {

// All sequences satisfying conditions (1)-(4), ordered by length and then
// lexicographically by endpoints.
inline std::vector<PrimeSequence> enumerate_prime_sequences(const BlockComponent& comp, int m) {
    int n = comp.size();
    std::vector<PrimeSequence> out;
    if (n < m) return out;
    PrimeSequence cur;
    std::function<void()> grow = [&]() {
        const Interval last = cur.back();  // copy: push_back below may reallocate
        if (last.b == n) {
            if (prime_sequence_violation(cur, comp, m).empty()) out.push_back(cur);
            return;
        }
        // a strictly increasing, 0 <= b_prev - a <= m-2
        for (int a = std::max(last.a + 1, last.b - (m - 2)); a <= last.b; ++a)
            for (int b = last.b + 1; b <= n; ++b) {
                if (b - a < m - 1) continue;
                cur.push_back({a, b});
                grow();
                cur.pop_back();
            }
    };
    for (int b = m; b <= n; ++b) {
        cur = {{1, b}};
        grow();
    }
    std::sort(out.begin(), out.end(), [](const PrimeSequence& x, const PrimeSequence& y) {
        if (x.size() != y.size()) return x.size() < y.size();
        return x < y;
    });
    return out;
}

struct SequenceChoice {
    std::size_t group = 0;      // forest component (0 outside forest modes)
    std::size_t component = 0;  // block adjacent component inside the group
    PrimeSequence sequence;
};

template <class F>
struct Candidate {
    std::string label;
    std::vector<SequenceChoice> choices;  // empty for supplied candidates
    GeneratorSet<F> generators;
};

struct Verification {
    std::vector<bool> contains_j;                 // (α) J ⊆ P_i
    std::optional<bool> intersection_equal;       // (β), absent when (α) failed
    std::vector<std::vector<bool>> contained_in;  // [i][j]: P_i ⊆ P_j
    bool incomparable = false;                    // (γ)
    bool pass = false;
    double milliseconds = 0;
    std::string error;  // resource failure; partial results are kept

    bool all_contain() const { return std::all_of(contains_j.begin(), contains_j.end(), [](bool b) { return b; }); }
};

namespace detail {

template <class F>
std::vector<Ideal<F>> certify_all(const std::vector<Ideal<F>>& ideals, const GroebnerOptions& opts) {
    std::vector<std::future<Ideal<F>>> futures;
    for (const auto& I : ideals)
        futures.push_back(std::async(std::launch::async, [&I, &opts] { return buchberger(I, opts); }));
    std::vector<Ideal<F>> out;
    std::exception_ptr first_error;
    for (auto& f : futures) {
        try {
            out.push_back(f.get());
        } catch (...) {
            if (!first_error) first_error = std::current_exception();
        }
    }
    if (first_error) std::rethrow_exception(first_error);
    return out;
}

template <class F>
bool reduces_to_zero(const std::vector<Polynomial<F>>& gens, const Ideal<F>& certified, const GroebnerOptions& opts) {
    for (const auto& g : gens)
        if (!normal_form(g, certified.basis(), opts.step_limit).is_zero()) return false;
    return true;
}

inline double elapsed_ms(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

template <class F>
Verification verify_certified(const Ideal<F>& J, const std::vector<Ideal<F>>& primes, const GroebnerOptions& opts,
                              std::vector<std::size_t> subset) {
    auto start = std::chrono::steady_clock::now();
    Verification v;
    std::size_t r = subset.size();
    v.contains_j.assign(r, false);
    v.contained_in.assign(r, std::vector<bool>(r, false));
    try {
        for (std::size_t i = 0; i < r; ++i) v.contains_j[i] = reduces_to_zero(J.generators(), primes[subset[i]], opts);
        v.incomparable = true;
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < r; ++j) {
                if (i == j) {
                    v.contained_in[i][j] = true;
                    continue;
                }
                v.contained_in[i][j] = reduces_to_zero(primes[subset[i]].generators(), primes[subset[j]], opts);
                if (v.contained_in[i][j]) v.incomparable = false;
            }
        if (v.all_contain()) {
            auto Jc = J.has_basis() ? J : buchberger(J, opts);
            if (r == 1) {
                v.intersection_equal = reduces_to_zero(primes[subset[0]].basis(), Jc, opts);
            } else {
                std::vector<Ideal<F>> chosen;
                for (auto k : subset) chosen.push_back(primes[k]);
                auto K = ideal_intersect(chosen, opts);
                v.intersection_equal = reduces_to_zero(K.basis(), Jc, opts) && reduces_to_zero(J.generators(), K, opts);
            }
        }
    } catch (const ResourceError& e) {
        v.error = e.what();
    }
    v.pass = v.error.empty() && v.all_contain() && v.intersection_equal.value_or(false) && v.incomparable;
    v.milliseconds = elapsed_ms(start);
    return v;
}

} // namespace detail

// (α) J inside every candidate, (β) the intersection equals J, (γ) no
// candidate inside another.
template <class F>
Verification verify_decomposition(const Workspace<F>& ws, const GeneratorSet<F>& J,
                                  const std::vector<GeneratorSet<F>>& primes) {
    if (primes.empty()) throw ArgumentError("verification needs at least one candidate prime");
    std::vector<Ideal<F>> ideals;
    for (const auto& p : primes) ideals.push_back(p.ideal());
    auto start = std::chrono::steady_clock::now();
    Verification v;
    std::vector<Ideal<F>> certified;
    try {
        certified = detail::certify_all(ideals, ws.gb);
    } catch (const ResourceError& e) {
        v.error = e.what();
        v.milliseconds = detail::elapsed_ms(start);
        return v;
    }
    std::vector<std::size_t> all(primes.size());
    std::iota(all.begin(), all.end(), 0);
    v = detail::verify_certified(J.ideal(), certified, ws.gb, all);
    v.milliseconds = detail::elapsed_ms(start);
    return v;
}

enum class Mode { Auto, Block, Union, Forest, Composite };

inline std::string mode_name(Mode m) {
    switch (m) {
    case Mode::Auto: return "auto";
    case Mode::Block: return "block";
    case Mode::Union: return "union";
    case Mode::Forest: return "forest";
    case Mode::Composite: return "composite";
    }
    return "auto";
}

inline Mode parse_mode(const std::string& s) {
    if (s == "auto") return Mode::Auto;
    if (s == "block") return Mode::Block;
    if (s == "union") return Mode::Union;
    if (s == "forest") return Mode::Forest;
    if (s == "composite") return Mode::Composite;
    throw ArgumentError("unknown mode '" + s + "' (auto, block, union, forest, composite)");
}

// One forest component: a union of block adjacent components.
struct ComponentGroup {
    std::vector<int> vertices;
    BlockStructure structure;
};

template <class F>
struct DecompositionReport {
    Mode requested = Mode::Auto;
    Mode mode = Mode::Auto;
    std::vector<std::string> notes;
    std::vector<ComponentGroup> groups;
    std::optional<IntersectionGraph> graph;
    std::optional<ForestConditionReport> conditions;
    std::vector<std::vector<std::vector<PrimeSequence>>> sequences;  // [group][component]
    std::vector<Candidate<F>> candidates;
    std::optional<Verification> screening;  // all candidates: (α) and containments
    std::vector<std::size_t> kept;
    std::vector<std::size_t> pruned;
    std::optional<Verification> verification;  // kept candidates
    double milliseconds = 0;

    bool verified() const { return verification.has_value(); }
    bool passed() const { return verification && verification->pass; }
};

struct DecomposeOptions {
    Mode mode = Mode::Auto;
    bool verify = false;
    // Vertex sets of explicit forest components; empty means the maximal
    // chains of (m-1)-cliques.
    std::vector<std::vector<int>> components;
};

namespace detail {

inline std::vector<ComponentGroup> default_groups(const SimplicialComplex& complex) {
    std::vector<ComponentGroup> groups;
    for (auto& chain : block_adjacent_chains(complex)) {
        ComponentGroup g;
        g.vertices = chain.vertices;
        g.structure.rows = complex.rows();
        g.structure.vertices = chain.vertices;
        g.structure.components.push_back(std::move(chain));
        groups.push_back(std::move(g));
    }
    return groups;
}

inline std::vector<ComponentGroup> explicit_groups(const SimplicialComplex& complex,
                                                   const std::vector<std::vector<int>>& sets) {
    std::vector<std::vector<Facet>> assigned(sets.size());
    std::vector<std::vector<int>> sorted_sets;
    for (auto s : sets) {
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
        sorted_sets.push_back(s);
    }
    for (const auto& f : complex.facets()) {
        bool placed = false;
        for (std::size_t i = 0; i < sorted_sets.size() && !placed; ++i)
            if (is_subset(f, sorted_sets[i])) {
                assigned[i].push_back(f);
                placed = true;
            }
        if (!placed) throw StructuralError("facet " + facet_to_string(f) + " lies in no listed component");
    }
    std::vector<ComponentGroup> groups;
    for (std::size_t i = 0; i < sets.size(); ++i) {
        if (assigned[i].empty())
            throw StructuralError("component " + facet_to_string(sorted_sets[i]) + " contains no facet");
        SimplicialComplex sub(complex.rows(), assigned[i]);
        ComponentGroup g;
        g.structure = block_structure(sub);
        g.vertices = sub.vertices();
        groups.push_back(std::move(g));
    }
    return groups;
}

template <class F>
void build_candidates(const Workspace<F>& ws, DecompositionReport<F>& rep) {
    // Flatten (group, component) pairs and take the Cartesian product.
    struct Slot {
        std::size_t group, component;
        const BlockComponent* comp;
        const std::vector<PrimeSequence>* seqs;
    };
    std::vector<Slot> slots;
    rep.sequences.clear();
    for (const auto& g : rep.groups) {
        std::vector<std::vector<PrimeSequence>> per;
        for (const auto& c : g.structure.components) per.push_back(enumerate_prime_sequences(c, ws.rows()));
        rep.sequences.push_back(std::move(per));
    }
    for (std::size_t gi = 0; gi < rep.groups.size(); ++gi)
        for (std::size_t ci = 0; ci < rep.groups[gi].structure.components.size(); ++ci) {
            if (rep.sequences[gi][ci].empty())
                throw StructuralError("component " + facet_to_string(rep.groups[gi].structure.components[ci].vertices) +
                                      " has no prime sequence");
            slots.push_back({gi, ci, &rep.groups[gi].structure.components[ci], &rep.sequences[gi][ci]});
        }

    // Per-slot generator sets, computed once.
    std::vector<std::vector<GeneratorSet<F>>> pieces;
    for (const auto& s : slots) {
        std::vector<GeneratorSet<F>> v;
        for (const auto& seq : *s.seqs) v.push_back(prime_sequence_ideal(ws, *s.comp, seq));
        pieces.push_back(std::move(v));
    }
    std::vector<std::size_t> idx(slots.size(), 0);
    while (true) {
        Candidate<F> c{"", {}, GeneratorSet<F>(ws)};
        for (std::size_t k = 0; k < slots.size(); ++k) {
            const auto& seq = (*slots[k].seqs)[idx[k]];
            c.choices.push_back({slots[k].group, slots[k].component, seq});
            c.generators.merge(pieces[k][idx[k]]);
            if (k) c.label += " + ";
            c.label += "P" + sequence_to_string(seq);
        }
        rep.candidates.push_back(std::move(c));
        std::size_t k = slots.size();
        while (k > 0) {
            --k;
            if (++idx[k] < slots[k].seqs->size()) break;
            idx[k] = 0;
            if (k == 0) return;
        }
        if (slots.empty()) return;
    }
}

} // namespace detail

// Screens every candidate, prunes those containing another candidate
// (equal candidates keep the earlier one), then certifies the rest.
template <class F>
void verify_report(const Workspace<F>& ws, const GeneratorSet<F>& J, DecompositionReport<F>& rep) {
    std::vector<Ideal<F>> ideals;
    for (const auto& c : rep.candidates) ideals.push_back(c.generators.ideal());
    auto start = std::chrono::steady_clock::now();
    std::vector<Ideal<F>> certified;
    try {
        certified = detail::certify_all(ideals, ws.gb);
    } catch (const ResourceError& e) {
        Verification v;
        v.error = e.what();
        v.milliseconds = detail::elapsed_ms(start);
        rep.verification = v;
        return;
    }
    auto Jc = buchberger(J.ideal(), ws.gb);
    std::vector<std::size_t> all(rep.candidates.size());
    std::iota(all.begin(), all.end(), 0);
    // Screening skips the intersection: it only needs (α) and containments.
    Verification screen;
    {
        std::size_t r = all.size();
        screen.contains_j.assign(r, false);
        screen.contained_in.assign(r, std::vector<bool>(r, false));
        screen.incomparable = true;
        try {
            for (std::size_t i = 0; i < r; ++i)
                screen.contains_j[i] = detail::reduces_to_zero(Jc.generators(), certified[i], ws.gb);
            for (std::size_t i = 0; i < r; ++i)
                for (std::size_t j = 0; j < r; ++j) {
                    screen.contained_in[i][j] =
                        i == j || detail::reduces_to_zero(certified[i].generators(), certified[j], ws.gb);
                    if (i != j && screen.contained_in[i][j]) screen.incomparable = false;
                }
        } catch (const ResourceError& e) {
            screen.error = e.what();
        }
        screen.milliseconds = detail::elapsed_ms(start);
    }
    rep.screening = screen;
    rep.kept.clear();
    rep.pruned.clear();
    for (std::size_t i = 0; i < all.size(); ++i) {
        bool redundant = false;
        for (std::size_t j = 0; j < all.size() && !redundant; ++j) {
            if (i == j || !screen.contained_in[j][i]) continue;
            // P_j ⊆ P_i: drop i unless they are equal and i comes first.
            redundant = !screen.contained_in[i][j] || j < i;
        }
        (redundant ? rep.pruned : rep.kept).push_back(i);
    }
    if (!rep.pruned.empty())
        rep.notes.push_back(std::to_string(rep.pruned.size()) + " candidate(s) pruned as non-minimal");
    auto v = detail::verify_certified(Jc, certified, ws.gb, rep.kept);
    v.milliseconds = detail::elapsed_ms(start);
    rep.verification = v;
}

template <class F>
DecompositionReport<F> decompose(const Workspace<F>& ws, const SimplicialComplex& complex,
                                 const DecomposeOptions& opts = {},
                                 const std::vector<GeneratorSet<F>>& supplied = {}) {
    auto start = std::chrono::steady_clock::now();
    DecompositionReport<F> rep;
    rep.requested = opts.mode;
    Mode mode = opts.mode;
    int m = complex.rows();

    if (mode == Mode::Auto) {
        try {
            auto bs = block_structure(complex);
            mode = bs.components.size() == 1 ? Mode::Block : Mode::Union;
        } catch (const StructuralError&) {
            mode = Mode::Forest;
        }
    }

    if (mode == Mode::Block || mode == Mode::Union) {
        auto bs = block_structure(complex);
        if (mode == Mode::Block && bs.components.size() != 1)
            throw StructuralError("not block adjacent: the complex splits into " + std::to_string(bs.components.size()) +
                                  " block adjacent components (use --mode union)");
        rep.groups.push_back({complex.vertices(), bs});
    } else {
        rep.groups = opts.components.empty() ? detail::default_groups(complex)
                                             : detail::explicit_groups(complex, opts.components);
        std::vector<std::vector<int>> sets;
        for (const auto& g : rep.groups) sets.push_back(g.vertices);
        rep.graph = intersection_graph(sets);
        rep.conditions = check_forest_conditions(sets, m);
        if (mode == Mode::Forest && !rep.graph->is_forest) {
            rep.notes.push_back("intersection graph has a cycle (edges as computed from vertex sets); routed to "
                                "composite mode, which always verifies");
            mode = Mode::Composite;
        }
        if (mode == Mode::Forest) {
            const auto& c = *rep.conditions;
            if (!c.cond_a) throw StructuralError("forest mode: condition (a) fails, three components share a vertex");
            if (!c.cond_b) throw StructuralError("forest mode: condition (b) fails, two components share more than one vertex");
            if (!c.cond_c) throw StructuralError("forest mode: condition (c) fails for some intersecting pair");
        }
        if (mode == Mode::Composite) rep.notes.push_back("composite mode is experimental; candidates are always verified");
    }
    rep.mode = mode;
    detail::build_candidates(ws, rep);
    for (std::size_t i = 0; i < supplied.size(); ++i)
        rep.candidates.push_back({"supplied " + std::to_string(i + 1), {}, supplied[i]});

    if (opts.verify || mode == Mode::Composite) verify_report(ws, facet_ideal(ws, complex), rep);
    rep.milliseconds = detail::elapsed_ms(start);
    return rep;
}

template <class F>
DecompositionReport<F> decompose_block_adjacent(const Workspace<F>& ws, const SimplicialComplex& complex, bool verify = false) {
    return decompose(ws, complex, {Mode::Block, verify, {}});
}

template <class F>
DecompositionReport<F> decompose_union(const Workspace<F>& ws, const SimplicialComplex& complex, bool verify = false) {
    return decompose(ws, complex, {Mode::Union, verify, {}});
}

template <class F>
DecompositionReport<F> decompose_forest(const Workspace<F>& ws, const SimplicialComplex& complex, bool verify = false,
                                        std::vector<std::vector<int>> components = {}) {
    return decompose(ws, complex, {Mode::Forest, verify, std::move(components)});
}

template <class F>
DecompositionReport<F> decompose_composite(const Workspace<F>& ws, const SimplicialComplex& complex,
                                           std::vector<std::vector<int>> components = {}) {
    return decompose(ws, complex, {Mode::Composite, true, std::move(components)});
}

struct Hypothesis {
    std::string name;
    bool holds = false;
    std::string detail;
};

struct TheoremReport {
    bool prime_by_theorem = false;
    std::string citation;
    std::vector<Hypothesis> hypotheses;
    // Informational: a labeling under which the complex is closed, when the
    // search ran.
    std::optional<bool> closed_labeling_found;
    std::string closed_labeling_note;
};

// Primality from the clique-tree theorem; no independent computation.
inline TheoremReport report_prime_by_theorem(const SimplicialComplex& complex, std::size_t perm_bound = 9) {
    TheoremReport rep;
    rep.citation = "clique-tree primality theorem: H_Δ a tree, clique triple intersections empty, pairwise "
                   "intersections of at most one vertex, all facets of dimension > 1";
    auto cd = clique_decomposition(complex);
    std::vector<std::vector<int>> sets;
    for (const auto& c : cd.cliques) sets.push_back(c.vertices);
    auto cond = check_forest_conditions(sets, complex.rows());
    auto graph = intersection_graph(sets);
    rep.hypotheses.push_back({"triple intersections empty", cond.cond_a,
                              cond.cond_a ? "" : std::to_string(cond.failing_triples.size()) + " triple(s) meet"});
    std::string wide;
    for (const auto& p : cond.pairs)
        if (!p.cond_b) wide += (wide.empty() ? "" : ", ") + std::to_string(p.i) + "-" + std::to_string(p.j);
    rep.hypotheses.push_back({"pairwise intersections at most one vertex", cond.cond_b,
                              wide.empty() ? "" : "cliques " + wide});
    rep.hypotheses.push_back({"clique intersection graph is a tree", graph.is_tree(),
                              graph.is_connected ? (graph.is_forest ? "" : "graph has a cycle") : "graph is disconnected"});
    bool dims = std::all_of(complex.facets().begin(), complex.facets().end(), [](const Facet& f) { return f.size() > 2; });
    rep.hypotheses.push_back({"every facet has dimension > 1", dims, dims ? "" : "an edge facet is present"});
    rep.prime_by_theorem = std::all_of(rep.hypotheses.begin(), rep.hypotheses.end(), [](const Hypothesis& h) { return h.holds; });
    try {
        auto lab = find_closed_labeling(complex, perm_bound);
        rep.closed_labeling_found = lab.has_value();
        if (lab) {
            bool identity = std::all_of(lab->begin(), lab->end(), [](const auto& kv) { return kv.first == kv.second; });
            rep.closed_labeling_note = identity ? "closed as labeled" : "closed after relabeling";
        } else {
            rep.closed_labeling_note = "no closed labeling exists";
        }
    } catch (const ResourceError& e) {
        rep.closed_labeling_note = e.what();
    }
    return rep;
}

struct UniversalProbe {
    bool all_pass = true;
    bool no_trials = false;
    std::size_t trials_run = 0;
    std::uint64_t seed = 0;
    std::optional<std::size_t> failing_trial;
    std::vector<int> failing_priority;  // variable ids, greatest first
};

// The facet-ideal generators under `trials` random lex orders.
template <class F>
UniversalProbe universal_gb_probe(const Workspace<F>& ws, const SimplicialComplex& complex, std::size_t trials,
                                  std::uint64_t seed) {
    if (!complex.is_pure()) throw StructuralError("universal Groebner probe needs a pure complex");
    UniversalProbe out;
    out.seed = seed;
    if (trials == 0) {
        out.no_trials = true;
        return out;
    }
    auto gens = facet_ideal(ws, complex).polynomials();
    std::mt19937_64 rng(seed);
    std::vector<int> perm(static_cast<std::size_t>(ws.ring->nvars()));
    std::iota(perm.begin(), perm.end(), 0);
    for (std::size_t t = 0; t < trials; ++t) {
        std::shuffle(perm.begin(), perm.end(), rng);
        auto order = make_order(TermOrder::from_priority(perm));
        std::vector<Polynomial<F>> reordered;
        for (const auto& g : gens) reordered.push_back(g.with_order(order));
        ++out.trials_run;
        if (!is_groebner(reordered, order, ws.gb.step_limit).is_gb) {
            out.all_pass = false;
            out.failing_trial = t;
            out.failing_priority = perm;
            break;
        }
    }
    return out;
}

} // namespace detfacet
