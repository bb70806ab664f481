#pragma once

// Buchberger engine and ideal operations built on it: normal forms,
// Groebner-basis certification, membership, containment, equality and
// intersection by elimination.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "detfacet/error.hpp"
#include "detfacet/ring.hpp"

namespace detfacet {

struct GroebnerOptions {
    std::size_t step_limit = 1'000'000;
    bool chain_criterion = true;
};

// A generator list plus, once certified, its reduced Groebner basis under
// the same term order.
template <class F>
class Ideal {
public:
    using Poly = Polynomial<F>;

    Ideal(RingPtr<F> ring, OrderPtr order, std::vector<Poly> gens = {})
        : ring_(std::move(ring)), order_(std::move(order)) {
        for (auto& g : gens) add(std::move(g));
    }

    static Ideal from_generators(std::vector<Poly> gens) {
        if (gens.empty()) throw EmptyInputError("ideal needs at least one generator to infer its ring");
        auto ring = gens.front().ring();
        auto order = gens.front().order();
        return Ideal(std::move(ring), std::move(order), std::move(gens));
    }

    void add(Poly g) {
        if (g.is_zero()) return;
        if (g.ring() != ring_ && !(g.ring()->layout == ring_->layout && g.field() == ring_->field))
            throw ConfigurationError("generator from a different ring");
        if (!(*g.order() == *order_)) g = g.with_order(order_);
        gens_.push_back(std::move(g));
        basis_.reset();
    }

    const std::vector<Poly>& generators() const { return gens_; }
    const RingPtr<F>& ring() const { return ring_; }
    const OrderPtr& order() const { return order_; }
    bool has_basis() const { return basis_.has_value(); }
    const std::vector<Poly>& basis() const {
        if (!basis_) throw ConfigurationError("ideal has no certified Groebner basis");
        return *basis_;
    }

    Ideal with_basis(std::vector<Poly> basis) const {
        Ideal r = *this;
        r.basis_ = std::move(basis);
        return r;
    }

private:
    RingPtr<F> ring_;
    OrderPtr order_;
    std::vector<Poly> gens_;
    std::optional<std::vector<Poly>> basis_;
};

template <class F>
struct GBReport {
    bool is_gb = true;
    // Indices into the generator list of the first S-pair whose remainder
    // is nonzero.
    std::optional<std::pair<std::size_t, std::size_t>> witness;
    std::optional<Polynomial<F>> witness_remainder;
    std::size_t pairs_examined = 0;
    std::size_t pairs_skipped_coprime = 0;
    std::size_t failing_pairs = 0;
    std::size_t reduction_steps = 0;
};

struct BuchbergerStats {
    std::size_t pairs_created = 0;
    std::size_t pairs_reduced = 0;
    std::size_t skipped_coprime = 0;
    std::size_t skipped_chain = 0;
    std::size_t reduction_steps = 0;
};

namespace detail {

template <class F>
class StepCounter {
public:
    explicit StepCounter(std::size_t limit) : limit_(limit) {}
    void tick() {
        if (++steps_ > limit_)
            throw ResourceError("reduction step limit of " + std::to_string(limit_) +
                                " exceeded (raise --limit-steps)");
    }
    std::size_t steps() const { return steps_; }

private:
    std::size_t limit_;
    std::size_t steps_ = 0;
};

// work[from..] - c * m * g[1..]; the leading terms are known to cancel.
template <class F>
std::vector<typename Polynomial<F>::Term> subtract_multiple(
    const F& k, const TermOrder& o, std::vector<typename Polynomial<F>::Term>& work, std::size_t from,
    const typename F::value_type& c, const Monomial& m, const Polynomial<F>& g) {
    using Term = typename Polynomial<F>::Term;
    std::vector<Term> out;
    const auto& gt = g.terms();
    out.reserve(work.size() - from + gt.size());
    std::size_t i = from + 1, j = 1;
    Monomial shifted;
    bool have_shifted = false;
    while (i < work.size() || j < gt.size()) {
        if (j < gt.size() && !have_shifted) {
            shifted = gt[j].mono * m;
            have_shifted = true;
        }
        if (j >= gt.size() || (i < work.size() && o.greater(work[i].mono, shifted))) {
            out.push_back(std::move(work[i++]));
        } else if (i >= work.size() || o.greater(shifted, work[i].mono)) {
            out.push_back({k.neg(k.mul(c, gt[j].coeff)), shifted});
            ++j;
            have_shifted = false;
        } else {
            auto v = k.sub(work[i].coeff, k.mul(c, gt[j].coeff));
            if (!k.is_zero(v)) out.push_back({std::move(v), work[i].mono});
            ++i;
            ++j;
            have_shifted = false;
        }
    }
    return out;
}

template <class F>
const Polynomial<F>* find_reducer(const Monomial& m, const std::vector<const Polynomial<F>*>& basis) {
    for (const auto* g : basis)
        if (g->terms().front().mono.divides(m)) return g;
    return nullptr;
}

// Full reduction: no term of the result is divisible by a leading term of
// the basis.
template <class F>
Polynomial<F> reduce_fully(const Polynomial<F>& f, const std::vector<const Polynomial<F>*>& basis,
                           StepCounter<F>& counter) {
    using Term = typename Polynomial<F>::Term;
    const F& k = f.field();
    const TermOrder& o = *f.order();
    std::vector<Term> work = f.terms();
    std::vector<Term> rem;
    std::size_t pos = 0;
    while (pos < work.size()) {
        const Polynomial<F>* g = find_reducer(work[pos].mono, basis);
        if (!g) {
            rem.push_back(std::move(work[pos++]));
            continue;
        }
        counter.tick();
        const auto& lead = g->terms().front();
        Monomial q = work[pos].mono.quotient(lead.mono);
        auto c = k.mul(work[pos].coeff, k.inv(lead.coeff));
        work = subtract_multiple(k, o, work, pos, c, q, *g);
        pos = 0;
    }
    Polynomial<F> r(f.ring(), f.order());
    r.mutable_terms() = std::move(rem);
    return r;
}

template <class F>
Polynomial<F> s_polynomial(const Polynomial<F>& f, const Polynomial<F>& g) {
    const F& k = f.field();
    const auto& [cf, mf] = f.terms().front();
    const auto& [cg, mg] = g.terms().front();
    Monomial l = mf.lcm(mg);
    return f.mul_term(k.inv(cf), l.quotient(mf)) - g.mul_term(k.inv(cg), l.quotient(mg));
}

template <class F>
void check_same_setting(const Polynomial<F>& f, const std::vector<Polynomial<F>>& G) {
    for (const auto& g : G) {
        f.check_compatible(g);
        if (g.is_zero()) throw EmptyInputError("zero polynomial in a reduction basis");
    }
}

} // namespace detail

template <class F>
Polynomial<F> normal_form(const Polynomial<F>& f, const std::vector<Polynomial<F>>& G,
                          std::size_t step_limit = GroebnerOptions{}.step_limit,
                          std::size_t* steps_out = nullptr) {
    detail::check_same_setting(f, G);
    std::vector<const Polynomial<F>*> basis;
    for (const auto& g : G) basis.push_back(&g);
    detail::StepCounter<F> counter(step_limit);
    auto r = detail::reduce_fully(f, basis, counter);
    if (steps_out) *steps_out += counter.steps();
    return r;
}

// Reduced Groebner basis of `gens` (all under their common tag order):
// monic, minimal, interreduced, sorted by increasing leading monomial.
template <class F>
std::vector<Polynomial<F>> groebner_basis(const std::vector<Polynomial<F>>& gens,
                                          const GroebnerOptions& opts = {},
                                          BuchbergerStats* stats_out = nullptr) {
    using Poly = Polynomial<F>;
    BuchbergerStats stats;
    std::vector<Poly> G;
    for (const auto& g : gens) {
        if (g.is_zero()) continue;
        if (!G.empty()) G.front().check_compatible(g);
        G.push_back(g.monic());
    }
    if (G.empty()) throw EmptyInputError("Groebner basis of an empty generator list");
    const TermOrder& o = *G.front().order();
    detail::StepCounter<F> counter(opts.step_limit);

    struct Pair {
        std::size_t i, j;
        Monomial lcm;
    };
    std::vector<Pair> pairs;
    std::vector<std::vector<char>> pending;  // pending[j][i] for i < j

    auto is_pending = [&](std::size_t a, std::size_t b) {
        if (a > b) std::swap(a, b);
        return pending[b][a] != 0;
    };
    auto add_element = [&](Poly p) {
        std::size_t n = G.size();
        pending.emplace_back(n, 0);
        const Monomial& lead = p.leading_monomial();
        for (std::size_t i = 0; i < n; ++i) {
            pairs.push_back({i, n, G[i].leading_monomial().lcm(lead)});
            pending[n][i] = 1;
            ++stats.pairs_created;
        }
        G.push_back(std::move(p));
    };

    {
        std::vector<Poly> initial = std::move(G);
        G.clear();
        for (auto& p : initial) add_element(std::move(p));
    }

    std::vector<const Poly*> basis;
    while (!pairs.empty()) {
        // Normal strategy: smallest lcm degree, then smallest lcm.
        std::size_t best = 0;
        for (std::size_t k = 1; k < pairs.size(); ++k) {
            const auto& a = pairs[k];
            const auto& b = pairs[best];
            if (a.lcm.degree() != b.lcm.degree()) {
                if (a.lcm.degree() < b.lcm.degree()) best = k;
                continue;
            }
            auto c = o.compare_unchecked(a.lcm, b.lcm);
            if (c < 0 || (c == 0 && std::pair(a.j, a.i) < std::pair(b.j, b.i))) best = k;
        }
        Pair pr = pairs[best];
        pairs[best] = std::move(pairs.back());
        pairs.pop_back();
        pending[pr.j][pr.i] = 0;

        const Monomial& li = G[pr.i].leading_monomial();
        const Monomial& lj = G[pr.j].leading_monomial();
        if (li.coprime(lj)) {
            ++stats.skipped_coprime;
            continue;
        }
        if (opts.chain_criterion) {
            bool chain = false;
            for (std::size_t k = 0; k < G.size() && !chain; ++k) {
                if (k == pr.i || k == pr.j) continue;
                if (G[k].leading_monomial().divides(pr.lcm) && !is_pending(pr.i, k) && !is_pending(pr.j, k))
                    chain = true;
            }
            if (chain) {
                ++stats.skipped_chain;
                continue;
            }
        }
        ++stats.pairs_reduced;
        basis.clear();
        for (const auto& g : G) basis.push_back(&g);
        Poly r = detail::reduce_fully(detail::s_polynomial(G[pr.i], G[pr.j]), basis, counter);
        if (!r.is_zero()) add_element(r.monic());
    }

    // Minimize: drop elements whose leading monomial is divisible by another
    // (ties resolved by keeping the earlier element).
    std::vector<Poly> minimal;
    for (std::size_t i = 0; i < G.size(); ++i) {
        bool redundant = false;
        for (std::size_t j = 0; j < G.size() && !redundant; ++j) {
            if (i == j) continue;
            const Monomial& lj = G[j].leading_monomial();
            const Monomial& li = G[i].leading_monomial();
            if (lj.divides(li) && (!(lj == li) || j < i)) redundant = true;
        }
        if (!redundant) minimal.push_back(G[i]);
    }
    // Interreduce tails.
    std::vector<Poly> reduced;
    for (std::size_t i = 0; i < minimal.size(); ++i) {
        basis.clear();
        for (std::size_t j = 0; j < minimal.size(); ++j)
            if (j != i) basis.push_back(&minimal[j]);
        Poly head = Poly::term(minimal[i].ring(), minimal[i].order(), minimal[i].leading_coeff(),
                               minimal[i].leading_monomial());
        Poly tail = minimal[i] - head;
        reduced.push_back((head + detail::reduce_fully(tail, basis, counter)).monic());
    }
    std::sort(reduced.begin(), reduced.end(), [&](const Poly& a, const Poly& b) {
        return o.compare_unchecked(a.leading_monomial(), b.leading_monomial()) < 0;
    });
    stats.reduction_steps = counter.steps();
    if (stats_out) *stats_out = stats;
    return reduced;
}

template <class F>
Ideal<F> buchberger(const Ideal<F>& I, const GroebnerOptions& opts = {}, BuchbergerStats* stats = nullptr) {
    if (I.generators().empty()) throw EmptyInputError("buchberger needs a nonempty generator list");
    if (I.has_basis()) return I;
    return I.with_basis(groebner_basis(I.generators(), opts, stats));
}

// Buchberger's criterion on the generator set itself, sorted under `order`.
// S-pairs with coprime leading terms are skipped; every other pair is
// reduced modulo the generators.
template <class F>
GBReport<F> is_groebner(const std::vector<Polynomial<F>>& gens, const OrderPtr& order,
                        std::size_t step_limit = GroebnerOptions{}.step_limit) {
    using Poly = Polynomial<F>;
    GBReport<F> report;
    std::vector<Poly> G;
    for (const auto& g : gens) {
        if (g.is_zero()) throw EmptyInputError("is_groebner received a zero generator");
        G.push_back(g.with_order(order));
    }
    if (G.empty()) return report;
    for (const auto& g : G) G.front().check_compatible(g);
    std::vector<const Poly*> basis;
    for (const auto& g : G) basis.push_back(&g);
    detail::StepCounter<F> counter(step_limit);
    for (std::size_t j = 0; j < G.size(); ++j) {
        for (std::size_t i = 0; i < j; ++i) {
            if (G[i].leading_monomial().coprime(G[j].leading_monomial())) {
                ++report.pairs_skipped_coprime;
                continue;
            }
            ++report.pairs_examined;
            Poly r = detail::reduce_fully(detail::s_polynomial(G[i], G[j]), basis, counter);
            if (!r.is_zero()) {
                ++report.failing_pairs;
                if (report.is_gb) {
                    report.is_gb = false;
                    report.witness = std::pair{i, j};
                    report.witness_remainder = std::move(r);
                }
            }
        }
    }
    report.reduction_steps = counter.steps();
    return report;
}

template <class F>
GBReport<F> is_groebner(const std::vector<Polynomial<F>>& gens) {
    if (gens.empty()) return {};
    return is_groebner(gens, gens.front().order());
}

template <class F>
bool ideal_member(const Polynomial<F>& f, const Ideal<F>& I, const GroebnerOptions& opts = {}) {
    if (I.has_basis()) return normal_form(f.with_order(I.order()), I.basis(), opts.step_limit).is_zero();
    auto certified = buchberger(I, opts);
    return normal_form(f.with_order(I.order()), certified.basis(), opts.step_limit).is_zero();
}

// True iff J is a subset of I.
template <class F>
bool ideal_contains(const Ideal<F>& I, const Ideal<F>& J, const GroebnerOptions& opts = {}) {
    auto certified = buchberger(I, opts);
    for (const auto& g : J.generators())
        if (!normal_form(g.with_order(I.order()), certified.basis(), opts.step_limit).is_zero()) return false;
    return true;
}

template <class F>
bool ideal_equal(const Ideal<F>& I, const Ideal<F>& J, const GroebnerOptions& opts = {}) {
    return ideal_contains(I, J, opts) && ideal_contains(J, I, opts);
}

namespace detail {

// I ∩ J from the ideal t*I + (1-t)*J, with t ranked above every matrix
// variable; the basis elements free of t form a Groebner basis of I ∩ J.
template <class F>
Ideal<F> intersect_two(const Ideal<F>& I, const Ideal<F>& J, const GroebnerOptions& opts) {
    using Poly = Polynomial<F>;
    const auto& base_ring = I.ring();
    const auto& base_order = I.order();
    int aux_id = base_ring->nvars();
    auto ext_ring = make_ring<F>(base_ring->layout.with_aux(base_ring->layout.aux() + 1), base_ring->field);
    auto ext_order = make_order(base_order->with_elimination_block(1));
    Poly t = Poly::variable(ext_ring, ext_order, aux_id);
    Poly one_minus_t = Poly::constant(ext_ring, ext_order, ext_ring->field.one()) - t;

    std::vector<Poly> gens;
    const auto& gi = I.has_basis() ? I.basis() : I.generators();
    const auto& gj = J.has_basis() ? J.basis() : J.generators();
    for (const auto& g : gi) gens.push_back(t * change_ring(g, ext_ring, ext_order));
    for (const auto& g : gj) gens.push_back(one_minus_t * change_ring(g, ext_ring, ext_order));
    auto gb = groebner_basis(gens, opts);

    std::vector<Poly> kept;
    for (const auto& g : gb) {
        bool has_t = false;
        for (const auto& term : g.terms()) has_t = has_t || term.mono.exponent(aux_id) > 0;
        if (!has_t) kept.push_back(change_ring(g, base_ring, base_order));
    }
    Ideal<F> result(base_ring, base_order, kept);
    // Elimination gives a Groebner basis; reduce it for a canonical form.
    return result.with_basis(kept.empty() ? kept : groebner_basis(kept, opts));
}

} // namespace detail

// Intersection of two or more ideals, folding pairwise from the smallest
// certified basis upward.
template <class F>
Ideal<F> ideal_intersect(const std::vector<Ideal<F>>& ideals, const GroebnerOptions& opts = {}) {
    if (ideals.size() < 2) throw ArgumentError("ideal_intersect needs at least two ideals");
    std::vector<Ideal<F>> certified;
    for (const auto& I : ideals) {
        if (!certified.empty()) {
            const auto& r0 = certified.front().ring();
            if (!(r0->layout == I.ring()->layout) || !(r0->field == I.ring()->field))
                throw ConfigurationError("ideal_intersect over different rings");
        }
        certified.push_back(buchberger(I, opts));
    }
    std::stable_sort(certified.begin(), certified.end(), [](const Ideal<F>& a, const Ideal<F>& b) {
        return a.basis().size() < b.basis().size();
    });
    Ideal<F> acc = certified.front();
    for (std::size_t k = 1; k < certified.size(); ++k) acc = detail::intersect_two(acc, certified[k], opts);
    return acc;
}

template <class F>
std::vector<Monomial> leading_monomials(const std::vector<Polynomial<F>>& polys) {
    std::vector<Monomial> out;
    for (const auto& p : polys) out.push_back(p.leading_monomial());
    return out;
}

} // namespace detfacet
