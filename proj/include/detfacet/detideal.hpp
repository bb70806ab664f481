#pragma once

// Minors of the generic matrix and the ideals built from them.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "detfacet/complex.hpp"
#include "detfacet/error.hpp"
#include "detfacet/groebner.hpp"
#include "detfacet/ring.hpp"

namespace detfacet {

// Ring, term order and Groebner limits shared by one computation.
template <class F>
struct Workspace {
    RingPtr<F> ring;
    OrderPtr order;
    GroebnerOptions gb;

    int rows() const { return ring->layout.rows(); }
    int cols() const { return ring->layout.cols(); }
    const F& field() const { return ring->field; }
};

// `order` defaults to lex with x11 > x12 > ... > xmn.
template <class F>
Workspace<F> make_workspace(int rows, int cols, F field = F{}, OrderPtr order = nullptr,
                            GroebnerOptions gb = {}) {
    auto ring = make_ring<F>(VariableLayout(rows, cols), std::move(field));
    if (!order) order = make_order(TermOrder::lex(ring->nvars()));
    if (order->size() != ring->nvars())
        throw LayoutError("term order has " + std::to_string(order->size()) + " variables, ring has " +
                          std::to_string(ring->nvars()));
    return Workspace<F>{std::move(ring), std::move(order), gb};
}

// [a_1...a_k|b_1...b_k]
struct MinorSpec {
    std::vector<int> rows;
    std::vector<int> cols;

    MinorSpec() = default;
    MinorSpec(std::vector<int> r, std::vector<int> c) : rows(std::move(r)), cols(std::move(c)) {
        if (rows.size() != cols.size() || rows.empty())
            throw LayoutError("minor needs equally many rows and columns");
        std::sort(rows.begin(), rows.end());
        std::sort(cols.begin(), cols.end());
        if (std::adjacent_find(rows.begin(), rows.end()) != rows.end() ||
            std::adjacent_find(cols.begin(), cols.end()) != cols.end())
            throw LayoutError("minor repeats a row or column");
        if (rows.front() < 1 || cols.front() < 1) throw LayoutError("minor indices are 1-based");
    }

    std::size_t size() const { return rows.size(); }

    void validate(const VariableLayout& layout) const {
        if (rows.back() > layout.rows() || cols.back() > layout.cols())
            throw LayoutError("minor " + to_string() + " outside " + std::to_string(layout.rows()) + "x" +
                              std::to_string(layout.cols()) + " matrix");
    }

    // Digits are run together when every index is a single digit.
    std::string to_string() const {
        auto side = [](const std::vector<int>& v) {
            bool compact = std::all_of(v.begin(), v.end(), [](int x) { return x < 10; });
            std::string s;
            for (std::size_t i = 0; i < v.size(); ++i) {
                if (i && !compact) s += ",";
                s += std::to_string(v[i]);
            }
            return s;
        };
        return "[" + side(rows) + "|" + side(cols) + "]";
    }

    // Accepts "[12|23]", "[1,2|2,10]" and, when `m` is given, the
    // maximal-minor shorthand "[123]" for rows 1..m.
    static MinorSpec parse(std::string_view text, int m = 0) {
        auto fail = [&](const std::string& why) -> MinorSpec {
            throw ValidationError("cannot parse minor '" + std::string(text) + "': " + why);
        };
        if (text.size() < 3 || text.front() != '[' || text.back() != ']') return fail("expected [rows|cols]");
        auto body = text.substr(1, text.size() - 2);
        auto side = [&](std::string_view s) {
            std::vector<int> v;
            bool commas = s.find(',') != std::string_view::npos;
            std::string cur;
            for (char ch : s) {
                if (std::isdigit(static_cast<unsigned char>(ch))) {
                    if (commas) cur += ch;
                    else v.push_back(ch - '0');
                } else if (ch == ',' && commas) {
                    if (cur.empty()) fail("empty index");
                    v.push_back(std::stoi(cur));
                    cur.clear();
                } else {
                    fail(std::string("unexpected character '") + ch + "'");
                }
            }
            if (commas) {
                if (cur.empty()) fail("empty index");
                v.push_back(std::stoi(cur));
            }
            return v;
        };
        auto bar = body.find('|');
        std::vector<int> r, c;
        if (bar == std::string_view::npos) {
            if (m <= 0) return fail("row indices missing");
            c = side(body);
            if (static_cast<int>(c.size()) != m) return fail("shorthand needs exactly m columns");
            for (int i = 1; i <= m; ++i) r.push_back(i);
        } else {
            r = side(body.substr(0, bar));
            c = side(body.substr(bar + 1));
        }
        if (r.empty() || r.size() != c.size()) return fail("row and column counts differ");
        try {
            return MinorSpec(std::move(r), std::move(c));
        } catch (const LayoutError& e) {
            return fail(e.what());
        }
    }

    auto operator<=>(const MinorSpec&) const = default;
    bool operator==(const MinorSpec&) const = default;
};

// Laplace expansion along the first row; subminors are shared through a
// cache that lives as long as the expander.
template <class F>
class MinorExpander {
public:
    using Poly = Polynomial<F>;

    explicit MinorExpander(const Workspace<F>& ws) : ws_(ws) {}

    Poly expand(const MinorSpec& spec) {
        spec.validate(ws_.ring->layout);
        std::uint64_t rmask = 0, cmask = 0;
        for (int r : spec.rows) rmask |= std::uint64_t{1} << (r - 1);
        for (int c : spec.cols) cmask |= std::uint64_t{1} << (c - 1);
        return expand(rmask, cmask);
    }

private:
    Poly expand(std::uint64_t rmask, std::uint64_t cmask) {
        auto key = std::pair(rmask, cmask);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        const auto& layout = ws_.ring->layout;
        const F& k = ws_.field();
        int row = __builtin_ctzll(rmask) + 1;
        std::uint64_t rest_rows = rmask & (rmask - 1);
        Poly result(ws_.ring, ws_.order);
        int sign_index = 0;
        for (std::uint64_t cs = cmask; cs; cs &= cs - 1, ++sign_index) {
            int col = __builtin_ctzll(cs) + 1;
            std::uint64_t bit = cs & (~cs + 1);
            Monomial x = Monomial::variable(ws_.ring->nvars(), layout.id(row, col));
            auto coeff = sign_index % 2 == 0 ? k.one() : k.neg(k.one());
            if (rest_rows == 0) {
                result = result + Poly::term(ws_.ring, ws_.order, coeff, x);
            } else {
                result = result + expand(rest_rows, cmask & ~bit).mul_term(coeff, x);
            }
        }
        memo_.emplace(key, result);
        return result;
    }

    const Workspace<F>& ws_;
    std::map<std::pair<std::uint64_t, std::uint64_t>, Poly> memo_;
};

template <class F>
Polynomial<F> minor(const Workspace<F>& ws, const MinorSpec& spec) {
    MinorExpander<F> e(ws);
    return e.expand(spec);
}

enum class Provenance { FacetIdeal, Interval, Overlap, Mixed, Augmented };

inline std::string provenance_name(Provenance p) {
    switch (p) {
    case Provenance::FacetIdeal: return "facet";
    case Provenance::Interval: return "interval";
    case Provenance::Overlap: return "overlap";
    case Provenance::Mixed: return "mixed";
    case Provenance::Augmented: return "intersection";
    }
    return "unknown";
}

// Minors with their expansions, without duplicates, in insertion order.
template <class F>
class GeneratorSet {
public:
    using Poly = Polynomial<F>;
    struct Entry {
        MinorSpec spec;
        Poly poly;
        Provenance source;
    };

    explicit GeneratorSet(const Workspace<F>& ws) : ring_(ws.ring), order_(ws.order) {}

    bool add(const MinorSpec& spec, Provenance source, MinorExpander<F>& expander) {
        if (!seen_.insert(spec).second) return false;
        entries_.push_back({spec, expander.expand(spec), source});
        return true;
    }

    void merge(const GeneratorSet& other) {
        for (const auto& e : other.entries_)
            if (seen_.insert(e.spec).second) entries_.push_back(e);
    }

    const std::vector<Entry>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }
    bool contains(const MinorSpec& spec) const { return seen_.count(spec) > 0; }

    std::vector<MinorSpec> minors() const {
        std::vector<MinorSpec> out;
        for (const auto& e : entries_) out.push_back(e.spec);
        return out;
    }
    std::vector<Poly> polynomials() const {
        std::vector<Poly> out;
        for (const auto& e : entries_) out.push_back(e.poly);
        return out;
    }
    Ideal<F> ideal() const { return Ideal<F>(ring_, order_, polynomials()); }

private:
    RingPtr<F> ring_;
    OrderPtr order_;
    std::vector<Entry> entries_;
    std::set<MinorSpec> seen_;
};

template <class F>
GeneratorSet<F> sum(const std::vector<const GeneratorSet<F>*>& parts, const Workspace<F>& ws) {
    GeneratorSet<F> out(ws);
    for (const auto* p : parts) out.merge(*p);
    return out;
}

inline std::vector<int> full_rows(int m) {
    std::vector<int> s(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) s[static_cast<std::size_t>(i)] = i + 1;
    return s;
}

// J_{Δ,S}: one minor per facet of size k and k-subset of S.
template <class F>
GeneratorSet<F> facet_ideal(const Workspace<F>& ws, const std::vector<Facet>& facets, const std::vector<int>& S,
                            Provenance source = Provenance::FacetIdeal) {
    std::vector<int> rows = S;
    std::sort(rows.begin(), rows.end());
    rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
    GeneratorSet<F> out(ws);
    MinorExpander<F> expander(ws);
    for (const auto& f : facets) {
        if (f.size() > rows.size())
            throw StructuralError("facet " + facet_to_string(f) + " is larger than the row set (" +
                                  std::to_string(rows.size()) + " rows)");
        for (const auto& r : k_subsets(rows, f.size())) out.add(MinorSpec(r, f), source, expander);
    }
    return out;
}

template <class F>
GeneratorSet<F> facet_ideal(const Workspace<F>& ws, const SimplicialComplex& complex) {
    if (complex.max_label() > ws.cols())
        throw LayoutError("vertex " + std::to_string(complex.max_label()) + " beyond " + std::to_string(ws.cols()) +
                          " matrix columns");
    return facet_ideal(ws, complex.facets(), full_rows(complex.rows()));
}

struct Interval {
    int a = 0;
    int b = 0;
    auto operator<=>(const Interval&) const = default;
    bool operator==(const Interval&) const = default;
};

// Intervals of positions in one block adjacent component.
using PrimeSequence = std::vector<Interval>;

inline std::string sequence_to_string(const PrimeSequence& seq) {
    std::string s = "{";
    for (std::size_t i = 0; i < seq.size(); ++i) {
        if (i) s += ",";
        s += "[" + std::to_string(seq[i].a) + "," + std::to_string(seq[i].b) + "]";
    }
    return s + "}";
}

// Empty string when the sequence satisfies conditions (1)-(4), else a
// description naming the first violated condition.
inline std::string prime_sequence_violation(const PrimeSequence& seq, const BlockComponent& comp, int m) {
    int n = comp.size();
    std::size_t t = seq.size();
    if (t == 0) return "condition (1): empty sequence";
    if (seq.front().a != 1 || seq.back().b != n)
        return "condition (1): intervals must start at position 1 and end at position " + std::to_string(n);
    for (std::size_t l = 0; l < t; ++l) {
        if (seq[l].a > seq[l].b) return "condition (1): interval " + std::to_string(l + 1) + " is reversed";
        if (l > 0 && (seq[l].a <= seq[l - 1].a || seq[l].b <= seq[l - 1].b))
            return "condition (1): endpoints must increase strictly";
    }
    for (std::size_t l = 0; l < t; ++l) {
        bool end = l == 0 || l + 1 == t;
        int need = end ? m - 1 : m;
        if (seq[l].b - seq[l].a < need)
            return "condition (2): interval " + std::to_string(l + 1) + " has b-a=" +
                   std::to_string(seq[l].b - seq[l].a) + " < " + std::to_string(need);
    }
    for (std::size_t l = 0; l + 1 < t; ++l) {
        int d = seq[l].b - seq[l + 1].a;
        if (d < 0 || d > m - 2)
            return "condition (3): b_" + std::to_string(l + 1) + "-a_" + std::to_string(l + 2) + "=" +
                   std::to_string(d) + " outside [0," + std::to_string(m - 2) + "]";
    }
    for (const auto& blk : comp.blocks) {
        if (blk.width() <= m) continue;
        bool inside = std::any_of(seq.begin(), seq.end(),
                                  [&](const Interval& iv) { return iv.a <= blk.first && blk.last <= iv.b; });
        if (!inside)
            return "condition (4): sub-block " + facet_to_string(blk.vertices) + " lies in no interval";
    }
    return {};
}

inline void validate_prime_sequence(const PrimeSequence& seq, const BlockComponent& comp, int m) {
    auto why = prime_sequence_violation(seq, comp, m);
    if (!why.empty()) throw ValidationError("prime sequence " + sequence_to_string(seq) + " invalid: " + why);
}

// P_Γ for one component: (i) m-minors of every interval's columns, (ii)
// k-minors over all row subsets of each overlap's k columns. Positions
// are mapped to labels through the component's vertex list.
template <class F>
GeneratorSet<F> prime_sequence_ideal(const Workspace<F>& ws, const BlockComponent& comp, const PrimeSequence& seq) {
    int m = ws.rows();
    validate_prime_sequence(seq, comp, m);
    GeneratorSet<F> out(ws);
    MinorExpander<F> expander(ws);
    auto rows = full_rows(m);
    auto labels = [&](int from, int to) {
        std::vector<int> v;
        for (int p = from; p <= to; ++p) v.push_back(comp.label(p));
        return v;
    };
    for (const auto& iv : seq)
        for (const auto& cols : k_subsets(labels(iv.a, iv.b), static_cast<std::size_t>(m)))
            out.add(MinorSpec(rows, cols), Provenance::Interval, expander);
    for (std::size_t l = 0; l + 1 < seq.size(); ++l) {
        auto cols = labels(seq[l + 1].a, seq[l].b);
        for (const auto& r : k_subsets(rows, cols.size())) out.add(MinorSpec(r, cols), Provenance::Overlap, expander);
    }
    return out;
}

// Sum over the components of a block structure; one sequence per component.
template <class F>
GeneratorSet<F> prime_sequence_ideal(const Workspace<F>& ws, const std::vector<BlockComponent>& comps,
                                     const std::vector<PrimeSequence>& seqs) {
    if (comps.size() != seqs.size())
        throw ValidationError("need one prime sequence per component (" + std::to_string(comps.size()) + ")");
    GeneratorSet<F> out(ws);
    for (std::size_t i = 0; i < comps.size(); ++i) out.merge(prime_sequence_ideal(ws, comps[i], seqs[i]));
    return out;
}

// Maximal minors of X_S[B] together with those of X_{S'}[D].
template <class F>
GeneratorSet<F> mixed_minor_ideal(const Workspace<F>& ws, const std::vector<int>& S, const std::vector<int>& B,
                                  const std::vector<int>& S2, const std::vector<int>& D) {
    if (D.size() >= B.size())
        throw ValidationError("mixed minors need |D| < |B| (got " + std::to_string(D.size()) + " and " +
                              std::to_string(B.size()) + ")");
    if (D.size() > S2.size())
        throw ValidationError("mixed minors need |D| <= |S'| (got " + std::to_string(D.size()) + " and " +
                              std::to_string(S2.size()) + ")");
    if (S.empty() || D.empty()) throw ValidationError("mixed minors need nonempty row and column sets");
    auto sorted = [](std::vector<int> v) {
        std::sort(v.begin(), v.end());
        return v;
    };
    GeneratorSet<F> out(ws);
    MinorExpander<F> expander(ws);
    auto family = [&](const std::vector<int>& rows, const std::vector<int>& cols) {
        std::size_t k = std::min(rows.size(), cols.size());
        for (const auto& r : k_subsets(sorted(rows), k))
            for (const auto& c : k_subsets(sorted(cols), k)) out.add(MinorSpec(r, c), Provenance::Mixed, expander);
    };
    family(S, B);
    family(S2, D);
    return out;
}

// Facets of the intersection of two clique skeletons.
inline std::vector<Facet> clique_intersection_facets(const Clique& a, const Clique& b) {
    auto common = set_intersection(a.vertices, b.vertices);
    if (common.empty()) return {};
    std::size_t k = static_cast<std::size_t>(std::min(a.dim, b.dim) + 1);
    if (common.size() <= k) return {common};
    return k_subsets(common, k);
}

// J_{Δ_1} + J_{Δ_2} + J_{Δ_1 ∩ Δ_2} for a two-clique complex.
template <class F>
GeneratorSet<F> augmented_two_clique_ideal(const Workspace<F>& ws, const SimplicialComplex& complex) {
    auto cd = clique_decomposition(complex);
    if (cd.cliques.size() != 2)
        throw StructuralError("augmented ideal needs exactly two cliques, found " + std::to_string(cd.cliques.size()));
    auto rows = full_rows(complex.rows());
    auto out = facet_ideal(ws, cd.cliques[0].facets(), rows);
    out.merge(facet_ideal(ws, cd.cliques[1].facets(), rows));
    out.merge(facet_ideal(ws, clique_intersection_facets(cd.cliques[0], cd.cliques[1]), rows, Provenance::Augmented));
    return out;
}

} // namespace detfacet
