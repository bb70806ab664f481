#pragma once

// Betti tables, linear quotients, Taylor strands and Hilbert series of
// monomial quotients.

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <future>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

#include <gmpxx.h>

#include "detfacet/complex.hpp"
#include "detfacet/detideal.hpp"
#include "detfacet/groebner.hpp"

namespace detfacet {

inline std::uint64_t choose(int n, int k) {
    if (k < 0 || n < 0 || k > n) return 0;
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    if (!r.fits_ulong_p()) throw ResourceError("binomial C(" + std::to_string(n) + "," + std::to_string(k) + ") overflows");
    return r.get_ui();
}

// Indexed by the quotient R/I: (0,0) = 1, (h,d) the rank of R(-d) in
// homological position h.
class GradedBettiTable {
public:
    using Key = std::pair<int, int>;

    GradedBettiTable() { entries_[{0, 0}] = 1; }

    static GradedBettiTable principal(int degree) {
        GradedBettiTable t;
        t.add(1, degree, 1);
        return t;
    }

    void add(int h, int d, std::uint64_t rank) {
        if (h < 0 || d < 0) throw ArgumentError("Betti entry at negative index");
        if (rank == 0) return;
        entries_[{h, d}] += rank;
    }

    std::uint64_t at(int h, int d) const {
        auto it = entries_.find({h, d});
        return it == entries_.end() ? 0 : it->second;
    }
    // β_i of the ideal: generators at i = 0.
    std::uint64_t ideal_beta(int i, int d) const { return at(i + 1, d); }

    std::uint64_t total(int h) const {
        std::uint64_t s = 0;
        for (const auto& [k, v] : entries_)
            if (k.first == h) s += v;
        return s;
    }

    int length() const { return entries_.empty() ? 0 : std::prev(entries_.end())->first.first; }

    const std::map<Key, std::uint64_t>& entries() const { return entries_; }

    bool operator==(const GradedBettiTable& other) const { return entries_ == other.entries_; }

    // "h=1: 6@3; h=2: 3@4, 9@6"
    std::string to_string() const {
        std::string out;
        int cur = -1;
        for (const auto& [k, v] : entries_) {
            if (k.first == 0) continue;
            if (k.first != cur) {
                if (cur >= 0) out += "; ";
                out += "h=" + std::to_string(k.first) + ": ";
                cur = k.first;
            } else {
                out += ", ";
            }
            out += std::to_string(v) + "@" + std::to_string(k.second);
        }
        return out.empty() ? "(unit)" : out;
    }

private:
    std::map<Key, std::uint64_t> entries_;
};

inline GradedBettiTable en_betti(int m, int n) {
    if (m < 1 || m > n) throw ArgumentError("en_betti needs 1 <= m <= n, got m=" + std::to_string(m) + " n=" + std::to_string(n));
    GradedBettiTable t;
    for (int i = 0; i <= n - m; ++i) t.add(i + 1, m + i, choose(n, m + i) * choose(m + i - 1, i));
    return t;
}

inline GradedBettiTable betti_convolution(const std::vector<GradedBettiTable>& tables) {
    if (tables.empty()) throw ArgumentError("betti_convolution needs at least one table");
    GradedBettiTable acc = tables.front();
    for (std::size_t i = 1; i < tables.size(); ++i) {
        std::map<GradedBettiTable::Key, std::uint64_t> sum;
        for (const auto& [a, x] : acc.entries())
            for (const auto& [b, y] : tables[i].entries()) sum[{a.first + b.first, a.second + b.second}] += x * y;
        GradedBettiTable t;
        for (const auto& [k, v] : sum)
            if (k.first > 0) t.add(k.first, k.second, v);
        acc = t;
    }
    return acc;
}

// Minimal generators of a monomial ideal, sorted, duplicates removed.
inline std::vector<Monomial> minimalize(std::vector<Monomial> gens) {
    std::sort(gens.begin(), gens.end(), [](const Monomial& a, const Monomial& b) { return a.degree() < b.degree(); });
    std::vector<Monomial> out;
    for (const auto& g : gens) {
        bool redundant = std::any_of(out.begin(), out.end(), [&](const Monomial& h) { return h.divides(g); });
        if (!redundant) out.push_back(g);
    }
    return out;
}

struct LinearQuotients {
    bool ok = true;
    std::vector<std::vector<int>> sets;  // variable ids, one list per generator
    std::optional<std::size_t> failing_index;
    std::vector<Monomial> failing_colon;  // minimal generators of the failing colon ideal
};

inline LinearQuotients linear_quotients(const std::vector<Monomial>& gens) {
    LinearQuotients out;
    for (std::size_t i = 0; i < gens.size(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (gens[i] == gens[j]) throw ArgumentError("linear_quotients: generator " + std::to_string(i + 1) + " repeats");
    for (std::size_t i = 0; i < gens.size(); ++i) {
        std::vector<Monomial> colon;
        for (std::size_t j = 0; j < i; ++j) colon.push_back(gens[j].quotient(gens[j].gcd(gens[i])));
        colon = minimalize(std::move(colon));
        std::vector<int> vars;
        for (const auto& c : colon) {
            if (c.degree() != 1) {
                out.ok = false;
                out.failing_index = i;
                out.failing_colon = colon;
                return out;
            }
            vars.push_back(std::countr_zero(c.support()));
        }
        std::sort(vars.begin(), vars.end());
        out.sets.push_back(std::move(vars));
    }
    return out;
}

inline GradedBettiTable betti_from_linear_quotients(const std::vector<Monomial>& gens, const LinearQuotients& lq) {
    if (!lq.ok) throw ArgumentError("betti_from_linear_quotients: quotients are not linear");
    if (lq.sets.size() != gens.size()) throw ArgumentError("betti_from_linear_quotients: set count mismatch");
    GradedBettiTable t;
    for (std::size_t u = 0; u < gens.size(); ++u) {
        int s = static_cast<int>(lq.sets[u].size());
        for (int i = 0; i <= s; ++i) t.add(i + 1, gens[u].degree() + i, choose(s, i));
    }
    return t;
}

// Leading terms x_{1 c1} ... x_{m cm} of the maximal minors, lex descending.
inline std::vector<Monomial> maximal_minor_initial_ideal(int m, int n) {
    VariableLayout layout(m, n);
    std::vector<int> cols(static_cast<std::size_t>(n));
    std::iota(cols.begin(), cols.end(), 1);
    std::vector<Monomial> out;
    for (const auto& c : k_subsets(cols, static_cast<std::size_t>(m))) {
        Monomial mono(layout.size());
        for (int i = 0; i < m; ++i) mono.set(layout.id(i + 1, c[static_cast<std::size_t>(i)]), 1);
        out.push_back(mono);
    }
    auto lex = TermOrder::lex(layout.size());
    std::sort(out.begin(), out.end(), [&](const Monomial& a, const Monomial& b) { return lex.compare(a, b) > 0; });
    return out;
}

// Resolution table of one clique of a closed complex: maximal minors for
// (m-1)-cliques, the transposed shape for a lone smaller facet.
inline std::optional<GradedBettiTable> clique_betti_table(int m, const Clique& c) {
    int n = static_cast<int>(c.vertices.size());
    int size = c.dim + 1;
    if (size == m) return en_betti(m, n);
    if (n == size) return en_betti(size, m);
    return std::nullopt;
}

struct MultigradedEntry {
    int h = 0;
    Monomial alpha{0};
    std::uint64_t rank = 0;
};

struct TaylorBetti {
    GradedBettiTable graded;
    std::vector<MultigradedEntry> multigraded;
};

namespace detail {

template <class F>
struct SparseColumn {
    std::vector<std::pair<int, typename F::value_type>> entries;  // sorted by row
    int pivot() const { return entries.empty() ? -1 : entries.back().first; }
};

template <class F>
void axpy(const F& k, SparseColumn<F>& col, const typename F::value_type& c, const SparseColumn<F>& other) {
    std::vector<std::pair<int, typename F::value_type>> out;
    out.reserve(col.entries.size() + other.entries.size());
    std::size_t i = 0, j = 0;
    while (i < col.entries.size() || j < other.entries.size()) {
        if (j == other.entries.size() || (i < col.entries.size() && col.entries[i].first < other.entries[j].first)) {
            out.push_back(std::move(col.entries[i++]));
        } else if (i == col.entries.size() || other.entries[j].first < col.entries[i].first) {
            out.push_back({other.entries[j].first, k.neg(k.mul(c, other.entries[j].second))});
            ++j;
        } else {
            auto v = k.sub(col.entries[i].second, k.mul(c, other.entries[j].second));
            if (!k.is_zero(v)) out.push_back({col.entries[i].first, v});
            ++i;
            ++j;
        }
    }
    col.entries = std::move(out);
}

// Homology ranks of one lcm strand. cells[s] lists subsets of size s whose
// lcm is alpha. Column reduction with clearing, top size first.
template <class F>
std::map<int, std::uint64_t> strand_homology(const F& k, const std::vector<std::vector<std::uint32_t>>& cells,
                                            const std::vector<Monomial>& lcm_of) {
    int top = static_cast<int>(cells.size()) - 1;
    std::vector<std::uint64_t> rank(cells.size() + 1, 0);  // rank[s] = rank of d_s
    std::vector<std::vector<bool>> cleared(cells.size());
    for (std::size_t s = 0; s < cells.size(); ++s) cleared[s].assign(cells[s].size(), false);
    for (int s = top; s >= 1; --s) {
        if (cells[static_cast<std::size_t>(s)].empty() || cells[static_cast<std::size_t>(s - 1)].empty()) continue;
        const auto& lower = cells[static_cast<std::size_t>(s - 1)];
        std::unordered_map<std::uint32_t, int> index;
        for (std::size_t i = 0; i < lower.size(); ++i) index[lower[i]] = static_cast<int>(i);
        const Monomial& alpha = lcm_of[cells[static_cast<std::size_t>(s)].front()];
        std::unordered_map<int, SparseColumn<F>> owner;
        for (std::size_t c = 0; c < cells[static_cast<std::size_t>(s)].size(); ++c) {
            if (cleared[static_cast<std::size_t>(s)][c]) continue;
            std::uint32_t mask = cells[static_cast<std::size_t>(s)][c];
            SparseColumn<F> col;
            int position = 0;
            for (std::uint32_t b = mask; b; b &= b - 1, ++position) {
                std::uint32_t face = mask & ~(b & (~b + 1));
                if (!(lcm_of[face] == alpha)) continue;
                auto it = index.find(face);
                if (it == index.end()) continue;
                col.entries.push_back({it->second, position % 2 ? k.neg(k.one()) : k.one()});
            }
            std::sort(col.entries.begin(), col.entries.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
            while (!col.entries.empty()) {
                auto it = owner.find(col.pivot());
                if (it == owner.end()) break;
                auto c0 = k.mul(col.entries.back().second, k.inv(it->second.entries.back().second));
                axpy(k, col, c0, it->second);
            }
            if (!col.entries.empty()) {
                cleared[static_cast<std::size_t>(s - 1)][static_cast<std::size_t>(col.pivot())] = true;
                owner.emplace(col.pivot(), std::move(col));
                ++rank[static_cast<std::size_t>(s)];
            }
        }
    }
    std::map<int, std::uint64_t> out;
    for (std::size_t s = 0; s < cells.size(); ++s) {
        std::uint64_t h = cells[s].size() - rank[s] - rank[s + 1];
        if (h) out[static_cast<int>(s)] = h;
    }
    return out;
}

} // namespace detail

// Minimal graded Betti numbers of R/I from the lcm strands of the Taylor
// complex. Subset size s sits in homological position s.
template <class F>
TaylorBetti taylor_strand_betti(std::vector<Monomial> gens, const F& field = F{}, std::size_t cap = 16) {
    std::sort(gens.begin(), gens.end(), [](const Monomial& a, const Monomial& b) {
        return std::lexicographical_compare(a.data(), a.data() + a.nvars(), b.data(), b.data() + b.nvars());
    });
    gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
    if (gens.size() > cap)
        throw ResourceError("Taylor strand oracle: " + std::to_string(gens.size()) + " generators exceed the cap of " +
                            std::to_string(cap));
    TaylorBetti out;
    if (gens.empty()) return out;
    std::size_t g = gens.size();
    std::uint32_t full = g == 32 ? ~0u : ((1u << g) - 1);
    std::vector<Monomial> lcm_of(static_cast<std::size_t>(full) + 1, Monomial(gens.front().nvars()));
    std::unordered_map<Monomial, std::vector<std::vector<std::uint32_t>>, Monomial::Hash> strands;
    for (std::uint32_t mask = 1; mask <= full && mask != 0; ++mask) {
        std::uint32_t low = mask & (~mask + 1);
        lcm_of[mask] = lcm_of[mask ^ low].lcm(gens[static_cast<std::size_t>(std::countr_zero(low))]);
        auto& cells = strands[lcm_of[mask]];
        std::size_t s = static_cast<std::size_t>(std::popcount(mask));
        if (cells.size() <= s) cells.resize(s + 1);
        cells[s].push_back(mask);
    }
    std::vector<const std::pair<const Monomial, std::vector<std::vector<std::uint32_t>>>*> work;
    for (const auto& kv : strands) work.push_back(&kv);
    std::size_t threads = std::max(1u, std::thread::hardware_concurrency());
    std::vector<std::future<std::vector<MultigradedEntry>>> futures;
    for (std::size_t t = 0; t < threads; ++t)
        futures.push_back(std::async(std::launch::async, [&, t] {
            std::vector<MultigradedEntry> found;
            for (std::size_t i = t; i < work.size(); i += threads)
                for (auto [s, r] : detail::strand_homology(field, work[i]->second, lcm_of))
                    found.push_back({s, work[i]->first, r});
            return found;
        }));
    for (auto& f : futures)
        for (auto& e : f.get()) out.multigraded.push_back(e);
    std::sort(out.multigraded.begin(), out.multigraded.end(), [](const MultigradedEntry& a, const MultigradedEntry& b) {
        if (a.h != b.h) return a.h < b.h;
        return std::lexicographical_compare(a.alpha.data(), a.alpha.data() + a.alpha.nvars(), b.alpha.data(),
                                            b.alpha.data() + b.alpha.nvars());
    });
    for (const auto& e : out.multigraded) out.graded.add(e.h, e.alpha.degree(), e.rank);
    return out;
}

// Integer polynomial in t, coefficient i at index i.
using IntPoly = std::vector<mpz_class>;

inline std::string poly_to_string(const IntPoly& p) {
    std::string out;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] == 0) continue;
        mpz_class c = p[i];
        if (out.empty()) {
            if (c < 0) out += "-";
        } else {
            out += c < 0 ? " - " : " + ";
        }
        mpz_class a = abs(c);
        if (a != 1 || i == 0) out += a.get_str();
        if (i > 0) out += (a != 1 ? "*t" : "t") + (i > 1 ? "^" + std::to_string(i) : std::string());
    }
    return out.empty() ? "0" : out;
}

namespace detail {

inline void trim(IntPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

inline IntPoly poly_mul(const IntPoly& a, const IntPoly& b) {
    if (a.empty() || b.empty()) return {};
    IntPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    trim(r);
    return r;
}

inline IntPoly poly_add(IntPoly a, const IntPoly& b) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
    trim(a);
    return a;
}

// Numerator of H_{R/I} over (1-t)^N.
inline IntPoly hilbert_numerator(std::vector<Monomial> gens) {
    gens = minimalize(std::move(gens));
    if (gens.empty()) return {1};
    if (gens.front().degree() == 0) return {};
    // Pairwise coprime: a complete intersection.
    std::uint64_t seen = 0;
    bool coprime = true;
    for (const auto& g : gens) {
        if (seen & g.support()) {
            coprime = false;
            break;
        }
        seen |= g.support();
    }
    if (coprime) {
        IntPoly r{1};
        for (const auto& g : gens) {
            IntPoly f(static_cast<std::size_t>(g.degree()) + 1, 0);
            f[0] = 1;
            f.back() = -1;
            r = poly_mul(r, f);
        }
        return r;
    }
    // Pivot: the variable in most generators.
    std::map<int, int> freq;
    for (const auto& g : gens)
        for (std::uint64_t s = g.support(); s; s &= s - 1) ++freq[std::countr_zero(s)];
    int x = std::max_element(freq.begin(), freq.end(), [](const auto& a, const auto& b) { return a.second < b.second; })->first;
    Monomial xm = Monomial::variable(gens.front().nvars(), x);
    std::vector<Monomial> with_x = gens, colon;
    with_x.push_back(xm);
    for (const auto& g : gens) colon.push_back(g.exponent(x) ? g.quotient(xm) : g);
    IntPoly t_colon = hilbert_numerator(std::move(colon));
    t_colon.insert(t_colon.begin(), mpz_class(0));
    trim(t_colon);
    return poly_add(hilbert_numerator(std::move(with_x)), t_colon);
}

} // namespace detail

struct HilbertSummary {
    IntPoly numerator;  // after cancelling every (1-t)
    int variables = 0;
    int dimension = 0;
    mpz_class multiplicity;
    int height() const { return variables - dimension; }
};

// Fully cancelled H = Q(t) / (1-t)^d for a numerator over (1-t)^N.
inline HilbertSummary cancel_numerator(IntPoly q, int nvars) {
    HilbertSummary h;
    h.variables = nvars;
    h.dimension = nvars;
    detail::trim(q);
    if (q.empty()) {
        h.dimension = -1;
        h.multiplicity = 0;
        return h;
    }
    while (h.dimension > 0) {
        mpz_class at1 = 0;
        for (const auto& c : q) at1 += c;
        if (at1 != 0) break;
        // synthetic division by (1 - t): q = (1-t) r  =>  r_i = sum_{j<=i} q_j
        IntPoly r(q.size() - 1);
        mpz_class acc = 0;
        for (std::size_t i = 0; i + 1 < q.size(); ++i) r[i] = (acc += q[i]);
        q = std::move(r);
        detail::trim(q);
        --h.dimension;
    }
    h.numerator = q;
    h.multiplicity = 0;
    for (const auto& c : q) h.multiplicity += c;
    return h;
}

inline HilbertSummary hilbert_series(const std::vector<Monomial>& gens, int nvars) {
    for (const auto& g : gens)
        if (g.nvars() != nvars) throw LayoutError("hilbert_series: generator over " + std::to_string(g.nvars()) +
                                                  " variables, expected " + std::to_string(nvars));
    return cancel_numerator(detail::hilbert_numerator(gens), nvars);
}

struct BinomialCheck {
    bool holds = true;
    std::size_t cases = 0;
    std::optional<std::array<int, 3>> counterexample;  // n, i, a
};

// sum_{k=0}^{n} C(k,i) C(k+a,a) = C(n+a+1, i+a+1) C(i+a, i)
inline BinomialCheck binomial_identity_check(int n_max, int a_max) {
    if (n_max < 0 || a_max < 0) throw ArgumentError("binomial_identity_check: negative bound");
    auto C = [](int n, int k) {
        mpz_class r;
        if (k < 0 || k > n) return r;
        mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
        return r;
    };
    BinomialCheck out;
    for (int n = 0; n <= n_max; ++n)
        for (int i = 0; i <= n; ++i)
            for (int a = 0; a <= a_max; ++a) {
                mpz_class lhs = 0;
                for (int k = 0; k <= n; ++k) lhs += C(k, i) * C(k + a, a);
                mpz_class rhs = C(n + a + 1, i + a + 1) * C(i + a, i);
                ++out.cases;
                if (lhs != rhs && out.holds) {
                    out.holds = false;
                    out.counterexample = std::array<int, 3>{n, i, a};
                }
            }
    return out;
}

struct InvariantItem {
    std::string name;
    std::string formula;
    std::string computed;
    std::optional<bool> agree;  // absent when the comparison was skipped
    std::string note;
};

struct InvariantsReport {
    std::vector<InvariantItem> items;
    std::vector<Monomial> initial_ideal;
    HilbertSummary hilbert;
    bool all_agree() const {
        return std::all_of(items.begin(), items.end(), [](const InvariantItem& i) { return i.agree.value_or(true); });
    }
};

// Closed-form formulas for a closed complex next to values computed from the
// initial ideal. Disagreements are reported, never resolved.
template <class F>
InvariantsReport invariants_report(const Workspace<F>& ws, const SimplicialComplex& complex, std::size_t taylor_cap = 16) {
    auto closed = is_closed(complex);
    if (!closed.closed)
        throw StructuralError("invariants_report needs a closed complex; this labeling is not closed"
                              " (find a closed relabeling first)");
    InvariantsReport rep;
    int m = complex.rows();
    int N = ws.ring->nvars();
    auto gb = groebner_basis(facet_ideal(ws, complex).polynomials(), ws.gb);
    rep.initial_ideal = minimalize(leading_monomials(gb));
    rep.hilbert = hilbert_series(rep.initial_ideal, N);

    auto cd = clique_decomposition(complex);
    int height_formula = 0;
    mpz_class e_formula = 1;
    IntPoly product{1};
    for (const auto& c : cd.cliques) {
        int n = static_cast<int>(c.vertices.size());
        height_formula += n - c.dim;
        e_formula *= static_cast<unsigned long>(choose(n, c.dim));
        auto part = facet_ideal(ws, c.facets(), full_rows(m), Provenance::FacetIdeal);
        auto in = minimalize(leading_monomials(groebner_basis(part.polynomials(), ws.gb)));
        product = detail::poly_mul(product, hilbert_series(in, N).numerator);
    }
    auto prod = cancel_numerator(product, N);

    rep.items.push_back({"height", std::to_string(height_formula), std::to_string(rep.hilbert.height()),
                         height_formula == rep.hilbert.height(), "sum over cliques of n - t"});
    rep.items.push_back({"multiplicity", e_formula.get_str(), rep.hilbert.multiplicity.get_str(),
                         e_formula == rep.hilbert.multiplicity, "product over cliques of C(n, t)"});
    rep.items.push_back({"hilbert numerator", poly_to_string(prod.numerator), poly_to_string(rep.hilbert.numerator),
                         prod.numerator == rep.hilbert.numerator, "product of per-clique series, fully cancelled"});

    InvariantItem betti{"betti", "", "", std::nullopt, ""};
    std::vector<GradedBettiTable> tables;
    bool supported = true;
    for (const auto& c : cd.cliques) {
        auto t = clique_betti_table(m, c);
        if (!t) {
            supported = false;
            betti.note = "unsupported clique shape " + facet_to_string(c.vertices) + " (dim " + std::to_string(c.dim) + ")";
            break;
        }
        tables.push_back(*t);
    }
    if (supported) betti.formula = betti_convolution(tables).to_string();
    if (rep.initial_ideal.size() > taylor_cap) {
        betti.note += (betti.note.empty() ? "" : "; ") + std::string("Taylor oracle skipped: ") +
                      std::to_string(rep.initial_ideal.size()) + " generators exceed the cap";
    } else {
        auto oracle = taylor_strand_betti(rep.initial_ideal, ws.field(), taylor_cap);
        betti.computed = oracle.graded.to_string();
        if (supported) betti.agree = betti_convolution(tables) == oracle.graded;
    }
    rep.items.push_back(betti);
    return rep;
}

} // namespace detfacet
