#pragma once

// Exact multivariate polynomials in the entries x_ij of a generic m x n
// matrix, optionally extended by auxiliary variables, under permuted
// lexicographic term orders.

#include <algorithm>
#include <array>
#include <bit>
#include <compare>
#include <cstdint>
#include <cstring>
#include <memory>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "detfacet/error.hpp"
#include "detfacet/field.hpp"

namespace detfacet {

inline constexpr std::size_t kMaxVariables = 64;

// Row-major flattening of the matrix entries, followed by `aux` auxiliary
// variables (used by elimination).
class VariableLayout {
public:
    VariableLayout(int rows, int cols, int aux = 0) : rows_(rows), cols_(cols), aux_(aux) {
        if (rows < 1 || cols < 1 || aux < 0)
            throw LayoutError("layout needs positive rows and columns");
        if (static_cast<std::size_t>(rows) * cols + aux > kMaxVariables)
            throw LayoutError("layout " + std::to_string(rows) + "x" + std::to_string(cols) +
                              " exceeds " + std::to_string(kMaxVariables) + " variables");
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int aux() const { return aux_; }
    int matrix_variables() const { return rows_ * cols_; }
    int size() const { return rows_ * cols_ + aux_; }

    // 1-based (row, col) to flat id.
    int id(int i, int j) const {
        if (i < 1 || i > rows_ || j < 1 || j > cols_)
            throw LayoutError("entry (" + std::to_string(i) + "," + std::to_string(j) +
                              ") outside " + std::to_string(rows_) + "x" +
                              std::to_string(cols_) + " matrix");
        return (i - 1) * cols_ + (j - 1);
    }
    std::pair<int, int> entry(int id) const {
        if (id < 0 || id >= matrix_variables())
            throw LayoutError("variable id " + std::to_string(id) + " is not a matrix entry");
        return {id / cols_ + 1, id % cols_ + 1};
    }

    VariableLayout with_aux(int aux) const { return VariableLayout(rows_, cols_, aux); }

    std::string variable_name(int id) const {
        if (id >= matrix_variables()) return "t" + std::to_string(id - matrix_variables());
        auto [i, j] = entry(id);
        if (rows_ < 10 && cols_ < 10) return "x" + std::to_string(i) + std::to_string(j);
        return "x" + std::to_string(i) + "_" + std::to_string(j);
    }

    bool operator==(const VariableLayout&) const = default;

private:
    int rows_;
    int cols_;
    int aux_;
};

// Dense exponent vector with cached degree and support mask.
class Monomial {
public:
    Monomial() = default;
    explicit Monomial(int nvars) : nvars_(static_cast<std::uint8_t>(nvars)) {
        if (nvars < 0 || static_cast<std::size_t>(nvars) > kMaxVariables)
            throw LayoutError("monomial over " + std::to_string(nvars) + " variables");
    }

    static Monomial variable(int nvars, int id, int power = 1) {
        Monomial m(nvars);
        m.set(id, power);
        return m;
    }

    static Monomial from_exponents(std::span<const int> exps) {
        Monomial m(static_cast<int>(exps.size()));
        for (std::size_t i = 0; i < exps.size(); ++i) m.set(static_cast<int>(i), exps[i]);
        return m;
    }

    int nvars() const { return nvars_; }
    int degree() const { return degree_; }
    std::uint64_t support() const { return support_; }
    int exponent(int id) const { return exp_[static_cast<std::size_t>(id)]; }
    bool is_one() const { return degree_ == 0; }

    void set(int id, int power) {
        if (id < 0 || id >= nvars_) throw LayoutError("variable id " + std::to_string(id) + " out of range");
        if (power < 0 || power > 255) throw ArgumentError("exponent out of range");
        auto& e = exp_[static_cast<std::size_t>(id)];
        degree_ = static_cast<std::uint16_t>(degree_ - e + power);
        e = static_cast<std::uint8_t>(power);
        if (power) support_ |= (std::uint64_t{1} << id);
        else support_ &= ~(std::uint64_t{1} << id);
    }

    bool divides(const Monomial& other) const {
        if ((support_ & ~other.support_) != 0 || degree_ > other.degree_) return false;
        for (std::uint64_t s = support_; s; s &= s - 1) {
            int v = std::countr_zero(s);
            if (exp_[v] > other.exp_[v]) return false;
        }
        return true;
    }

    bool coprime(const Monomial& other) const { return (support_ & other.support_) == 0; }

    Monomial operator*(const Monomial& other) const {
        check_same(other);
        Monomial r = *this;
        for (std::uint64_t s = other.support_; s; s &= s - 1) {
            int v = std::countr_zero(s);
            int e = r.exp_[v] + other.exp_[v];
            if (e > 255) throw ArgumentError("exponent overflow in monomial product");
            r.exp_[v] = static_cast<std::uint8_t>(e);
        }
        r.degree_ = static_cast<std::uint16_t>(degree_ + other.degree_);
        r.support_ = support_ | other.support_;
        return r;
    }

    // this / other; requires other | this.
    Monomial quotient(const Monomial& other) const {
        Monomial r = *this;
        for (std::uint64_t s = other.support_; s; s &= s - 1) {
            int v = std::countr_zero(s);
            r.exp_[v] = static_cast<std::uint8_t>(r.exp_[v] - other.exp_[v]);
            if (r.exp_[v] == 0) r.support_ &= ~(std::uint64_t{1} << v);
        }
        r.degree_ = static_cast<std::uint16_t>(degree_ - other.degree_);
        return r;
    }

    Monomial lcm(const Monomial& other) const {
        check_same(other);
        Monomial r = *this;
        for (std::uint64_t s = other.support_; s; s &= s - 1) {
            int v = std::countr_zero(s);
            if (other.exp_[v] > r.exp_[v]) {
                r.degree_ = static_cast<std::uint16_t>(r.degree_ + other.exp_[v] - r.exp_[v]);
                r.exp_[v] = other.exp_[v];
            }
        }
        r.support_ = support_ | other.support_;
        return r;
    }

    Monomial gcd(const Monomial& other) const {
        check_same(other);
        Monomial r(nvars_);
        for (std::uint64_t s = support_ & other.support_; s; s &= s - 1) {
            int v = std::countr_zero(s);
            r.set(v, std::min(exp_[v], other.exp_[v]));
        }
        return r;
    }

    // Same exponents in a layout with `nvars` variables; dropped variables
    // must have exponent zero.
    Monomial resized(int nvars) const {
        Monomial r(nvars);
        for (std::uint64_t s = support_; s; s &= s - 1) {
            int v = std::countr_zero(s);
            if (v >= nvars) throw LayoutError("cannot drop a variable that occurs");
            r.set(v, exp_[v]);
        }
        return r;
    }

    bool operator==(const Monomial& other) const {
        return nvars_ == other.nvars_ && support_ == other.support_ &&
               std::memcmp(exp_.data(), other.exp_.data(), nvars_) == 0;
    }

    const std::uint8_t* data() const { return exp_.data(); }

    std::string to_string(const VariableLayout& layout) const {
        if (degree_ == 0) return "1";
        std::string out;
        for (std::uint64_t s = support_; s; s &= s - 1) {
            int v = std::countr_zero(s);
            if (!out.empty()) out += "*";
            out += layout.variable_name(v);
            if (exp_[v] > 1) out += "^" + std::to_string(exp_[v]);
        }
        return out;
    }

    void check_same(const Monomial& other) const {
        if (nvars_ != other.nvars_)
            throw LayoutError("monomials over " + std::to_string(nvars_) + " and " +
                              std::to_string(other.nvars_) + " variables");
    }

    struct Hash {
        std::size_t operator()(const Monomial& m) const {
            std::size_t h = std::hash<std::uint64_t>{}(m.support_);
            for (std::uint64_t s = m.support_; s; s &= s - 1) {
                int v = std::countr_zero(s);
                h = h * 1000003u ^ (static_cast<std::size_t>(v) << 8 | m.exp_[v]);
            }
            return h;
        }
    };

private:
    std::array<std::uint8_t, kMaxVariables> exp_{};
    std::uint8_t nvars_ = 0;
    std::uint16_t degree_ = 0;
    std::uint64_t support_ = 0;
};

// Lexicographic order on exponent vectors read in a chosen variable
// priority; priority()[0] is the greatest variable.
class TermOrder {
public:
    // x_0 > x_1 > ... > x_{n-1}: for matrix variables this is
    // x11 > x12 > ... > x1n > x21 > ... > xmn.
    static TermOrder lex(int nvars) {
        std::vector<int> p(static_cast<std::size_t>(nvars));
        std::iota(p.begin(), p.end(), 0);
        return TermOrder(std::move(p));
    }

    static TermOrder from_priority(std::vector<int> priority) { return TermOrder(std::move(priority)); }

    // Appends `aux` new variables (ids size()..size()+aux-1) ranked above
    // every existing variable.
    TermOrder with_elimination_block(int aux) const {
        std::vector<int> p;
        int n = size();
        for (int a = 0; a < aux; ++a) p.push_back(n + a);
        p.insert(p.end(), priority_.begin(), priority_.end());
        return TermOrder(std::move(p));
    }

    // Drops the elimination block again.
    TermOrder without_variables_from(int first_dropped) const {
        std::vector<int> p;
        for (int v : priority_)
            if (v < first_dropped) p.push_back(v);
        return TermOrder(std::move(p));
    }

    int size() const { return static_cast<int>(priority_.size()); }
    const std::vector<int>& priority() const { return priority_; }
    bool is_natural() const { return kind_ == Kind::Natural; }

    std::strong_ordering compare(const Monomial& a, const Monomial& b) const {
        if (a.nvars() != b.nvars() || a.nvars() != size())
            throw LayoutError("term order over " + std::to_string(size()) +
                              " variables cannot compare monomials over " +
                              std::to_string(a.nvars()) + " and " + std::to_string(b.nvars()));
        return compare_unchecked(a, b);
    }

    std::strong_ordering compare_unchecked(const Monomial& a, const Monomial& b) const {
        switch (kind_) {
        case Kind::Natural: {
            int c = std::memcmp(a.data(), b.data(), static_cast<std::size_t>(size()));
            return c <=> 0;
        }
        case Kind::LastFirst: {
            int last = size() - 1;
            if (a.exponent(last) != b.exponent(last)) return a.exponent(last) <=> b.exponent(last);
            int c = std::memcmp(a.data(), b.data(), static_cast<std::size_t>(last));
            return c <=> 0;
        }
        case Kind::General:
            for (int v : priority_) {
                int ea = a.exponent(v), eb = b.exponent(v);
                if (ea != eb) return ea <=> eb;
            }
            return std::strong_ordering::equal;
        }
        return std::strong_ordering::equal;
    }

    bool greater(const Monomial& a, const Monomial& b) const { return compare_unchecked(a, b) > 0; }

    bool operator==(const TermOrder& other) const { return priority_ == other.priority_; }

private:
    enum class Kind { Natural, LastFirst, General };

    explicit TermOrder(std::vector<int> priority) : priority_(std::move(priority)) {
        std::vector<char> seen(priority_.size(), 0);
        for (int v : priority_) {
            if (v < 0 || static_cast<std::size_t>(v) >= priority_.size() || seen[static_cast<std::size_t>(v)])
                throw ArgumentError("term order priority is not a permutation");
            seen[static_cast<std::size_t>(v)] = 1;
        }
        if (priority_.size() > kMaxVariables) throw LayoutError("too many variables for a term order");
        bool natural = true, last_first = !priority_.empty();
        int n = size();
        for (int k = 0; k < n; ++k) {
            natural = natural && priority_[static_cast<std::size_t>(k)] == k;
            int expected = k == 0 ? n - 1 : k - 1;
            last_first = last_first && priority_[static_cast<std::size_t>(k)] == expected;
        }
        kind_ = natural ? Kind::Natural : (last_first ? Kind::LastFirst : Kind::General);
    }

    std::vector<int> priority_;
    Kind kind_ = Kind::General;
};

inline std::strong_ordering compare_monomials(const Monomial& a, const Monomial& b, const TermOrder& o) {
    return o.compare(a, b);
}

using OrderPtr = std::shared_ptr<const TermOrder>;

inline OrderPtr make_order(TermOrder o) { return std::make_shared<const TermOrder>(std::move(o)); }

template <class F>
struct Ring {
    VariableLayout layout;
    F field;

    int nvars() const { return layout.size(); }
};

template <class F>
using RingPtr = std::shared_ptr<const Ring<F>>;

template <class F>
RingPtr<F> make_ring(VariableLayout layout, F field = F{}) {
    return std::make_shared<const Ring<F>>(Ring<F>{layout, std::move(field)});
}

template <class F>
class Polynomial {
public:
    using Coeff = typename F::value_type;
    struct Term {
        Coeff coeff;
        Monomial mono;
    };

    Polynomial() = default;
    Polynomial(RingPtr<F> ring, OrderPtr order) : ring_(std::move(ring)), order_(std::move(order)) {
        if (!ring_ || !order_) throw ConfigurationError("polynomial needs a ring and a term order");
        if (order_->size() != ring_->nvars())
            throw LayoutError("term order size does not match the ring");
    }

    // Sorts and combines arbitrary terms.
    static Polynomial from_terms(RingPtr<F> ring, OrderPtr order, std::vector<Term> terms) {
        Polynomial p(std::move(ring), std::move(order));
        for (const auto& t : terms)
            if (t.mono.nvars() != p.ring_->nvars()) throw LayoutError("term outside the ring layout");
        p.terms_ = std::move(terms);
        p.normalize();
        return p;
    }

    static Polynomial constant(RingPtr<F> ring, OrderPtr order, Coeff c) {
        Polynomial p(ring, std::move(order));
        if (!ring->field.is_zero(c)) p.terms_.push_back({std::move(c), Monomial(ring->nvars())});
        return p;
    }

    static Polynomial variable(RingPtr<F> ring, OrderPtr order, int id) {
        Polynomial p(ring, std::move(order));
        p.terms_.push_back({ring->field.one(), Monomial::variable(ring->nvars(), id)});
        return p;
    }

    static Polynomial term(RingPtr<F> ring, OrderPtr order, Coeff c, Monomial m) {
        return from_terms(std::move(ring), std::move(order), {Term{std::move(c), std::move(m)}});
    }

    const std::vector<Term>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    const RingPtr<F>& ring() const { return ring_; }
    const OrderPtr& order() const { return order_; }
    const F& field() const { return ring_->field; }

    std::pair<Coeff, Monomial> leading_term() const {
        if (terms_.empty()) throw EmptyInputError("leading term of the zero polynomial");
        return {terms_.front().coeff, terms_.front().mono};
    }
    const Monomial& leading_monomial() const {
        if (terms_.empty()) throw EmptyInputError("leading monomial of the zero polynomial");
        return terms_.front().mono;
    }
    const Coeff& leading_coeff() const {
        if (terms_.empty()) throw EmptyInputError("leading coefficient of the zero polynomial");
        return terms_.front().coeff;
    }

    // Leading term with respect to `o`, which may differ from the tag.
    std::pair<Coeff, Monomial> leading_term(const TermOrder& o) const {
        if (terms_.empty()) throw EmptyInputError("leading term of the zero polynomial");
        const Term* best = &terms_.front();
        for (const auto& t : terms_)
            if (o.compare(t.mono, best->mono) > 0) best = &t;
        return {best->coeff, best->mono};
    }

    Polynomial with_order(OrderPtr order) const {
        if (*order == *order_) {
            Polynomial p = *this;
            p.order_ = std::move(order);
            return p;
        }
        return from_terms(ring_, std::move(order), terms_);
    }

    int total_degree() const {
        int d = 0;
        for (const auto& t : terms_) d = std::max(d, t.mono.degree());
        return d;
    }

    Polynomial operator-() const {
        Polynomial p = *this;
        for (auto& t : p.terms_) t.coeff = field().neg(t.coeff);
        return p;
    }

    Polynomial operator+(const Polynomial& g) const { return combine(g, false); }
    Polynomial operator-(const Polynomial& g) const { return combine(g, true); }

    Polynomial operator*(const Polynomial& g) const {
        check_compatible(g);
        std::vector<Term> out;
        out.reserve(terms_.size() * g.terms_.size());
        for (const auto& a : terms_)
            for (const auto& b : g.terms_) out.push_back({field().mul(a.coeff, b.coeff), a.mono * b.mono});
        Polynomial p(ring_, order_);
        p.terms_ = std::move(out);
        p.normalize();
        return p;
    }

    Polynomial scaled(const Coeff& c) const {
        Polynomial p(ring_, order_);
        if (field().is_zero(c)) return p;
        p.terms_.reserve(terms_.size());
        for (const auto& t : terms_) p.terms_.push_back({field().mul(t.coeff, c), t.mono});
        return p;
    }

    // c * m * this; order is preserved because term orders are
    // multiplicative.
    Polynomial mul_term(const Coeff& c, const Monomial& m) const {
        Polynomial p(ring_, order_);
        if (field().is_zero(c)) return p;
        p.terms_.reserve(terms_.size());
        for (const auto& t : terms_) p.terms_.push_back({field().mul(t.coeff, c), t.mono * m});
        return p;
    }

    Polynomial monic() const {
        if (terms_.empty() || field().is_one(terms_.front().coeff)) return *this;
        return scaled(field().inv(terms_.front().coeff));
    }

    bool operator==(const Polynomial& g) const {
        if (terms_.size() != g.terms_.size()) return false;
        for (std::size_t i = 0; i < terms_.size(); ++i)
            if (!(terms_[i].mono == g.terms_[i].mono) || !(terms_[i].coeff == g.terms_[i].coeff)) return false;
        return true;
    }

    void check_compatible(const Polynomial& g) const {
        if (!ring_ || !g.ring_) throw ConfigurationError("polynomial without a ring");
        if (ring_ != g.ring_ && !(ring_->layout == g.ring_->layout && ring_->field == g.ring_->field))
            throw ConfigurationError("polynomials live in different rings");
        if (order_ != g.order_ && !(*order_ == *g.order_))
            throw ConfigurationError("polynomials are sorted under different term orders");
    }

    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::string out;
        const auto& layout = ring_->layout;
        for (std::size_t i = 0; i < terms_.size(); ++i) {
            std::string c = field().to_string(terms_[i].coeff);
            bool negative = !c.empty() && c[0] == '-';
            if (negative) c.erase(0, 1);
            if (i == 0) out += negative ? "-" : "";
            else out += negative ? " - " : " + ";
            bool unit = c == "1";
            if (terms_[i].mono.is_one()) out += c;
            else out += (unit ? "" : c + "*") + terms_[i].mono.to_string(layout);
        }
        return out;
    }

    // Direct access for the reduction kernels; callers keep terms sorted
    // and nonzero.
    std::vector<Term>& mutable_terms() { return terms_; }

private:
    Polynomial combine(const Polynomial& g, bool subtract) const {
        check_compatible(g);
        Polynomial p(ring_, order_);
        const F& k = field();
        const TermOrder& o = *order_;
        auto i = terms_.begin();
        auto j = g.terms_.begin();
        p.terms_.reserve(terms_.size() + g.terms_.size());
        while (i != terms_.end() || j != g.terms_.end()) {
            if (j == g.terms_.end() || (i != terms_.end() && o.greater(i->mono, j->mono))) {
                p.terms_.push_back(*i++);
            } else if (i == terms_.end() || o.greater(j->mono, i->mono)) {
                p.terms_.push_back({subtract ? k.neg(j->coeff) : j->coeff, j->mono});
                ++j;
            } else {
                Coeff c = subtract ? k.sub(i->coeff, j->coeff) : k.add(i->coeff, j->coeff);
                if (!k.is_zero(c)) p.terms_.push_back({std::move(c), i->mono});
                ++i;
                ++j;
            }
        }
        return p;
    }

    void normalize() {
        const TermOrder& o = *order_;
        std::sort(terms_.begin(), terms_.end(),
                  [&](const Term& a, const Term& b) { return o.greater(a.mono, b.mono); });
        std::vector<Term> out;
        out.reserve(terms_.size());
        for (auto& t : terms_) {
            if (!out.empty() && out.back().mono == t.mono) out.back().coeff = field().add(out.back().coeff, t.coeff);
            else out.push_back(std::move(t));
        }
        std::erase_if(out, [&](const Term& t) { return field().is_zero(t.coeff); });
        terms_ = std::move(out);
    }

    RingPtr<F> ring_;
    OrderPtr order_;
    std::vector<Term> terms_;
};

// Moves a polynomial into a ring with a different number of auxiliary
// variables; used to enter and leave elimination rings.
template <class F>
Polynomial<F> change_ring(const Polynomial<F>& f, RingPtr<F> ring, OrderPtr order) {
    std::vector<typename Polynomial<F>::Term> terms;
    terms.reserve(f.size());
    for (const auto& t : f.terms()) terms.push_back({t.coeff, t.mono.resized(ring->nvars())});
    return Polynomial<F>::from_terms(std::move(ring), std::move(order), std::move(terms));
}

} // namespace detfacet
