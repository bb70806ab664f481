#pragma once

#include <cstdint>
#include <string>
#include <utility>

#include <gmpxx.h>

#include "detfacet/error.hpp"

namespace detfacet {

// Integers modulo a prime p with 2 < p < 2^31. Values are kept reduced in
// [0, p).
class PrimeField {
public:
    using value_type = std::uint32_t;

    static constexpr std::uint32_t kDefaultModulus = 32003;

    explicit PrimeField(std::uint32_t p = kDefaultModulus) : p_(p) {
        if (p <= 2 || p >= (1u << 31) || !is_prime(p))
            throw ArgumentError("modulus " + std::to_string(p) +
                                " must be an odd prime below 2^31");
    }

    std::uint32_t modulus() const { return p_; }
    std::string name() const { return "prime:" + std::to_string(p_); }

    value_type zero() const { return 0; }
    value_type one() const { return 1; }

    value_type from_int(long long v) const {
        long long r = v % static_cast<long long>(p_);
        if (r < 0) r += p_;
        return static_cast<value_type>(r);
    }

    bool is_zero(value_type a) const { return a == 0; }
    bool is_one(value_type a) const { return a == 1; }

    value_type add(value_type a, value_type b) const {
        std::uint32_t s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    value_type sub(value_type a, value_type b) const {
        return a >= b ? a - b : a + p_ - b;
    }
    value_type neg(value_type a) const { return a == 0 ? 0 : p_ - a; }
    value_type mul(value_type a, value_type b) const {
        return static_cast<value_type>(
            (static_cast<std::uint64_t>(a) * b) % p_);
    }
    value_type inv(value_type a) const {
        if (a == 0) throw ArgumentError("division by zero in " + name());
        std::int64_t t = 0, new_t = 1;
        std::int64_t r = p_, new_r = a;
        while (new_r != 0) {
            std::int64_t q = r / new_r;
            t = std::exchange(new_t, t - q * new_t);
            r = std::exchange(new_r, r - q * new_r);
        }
        if (t < 0) t += p_;
        return static_cast<value_type>(t);
    }

    // Symmetric representative, so -1 prints as -1 rather than p-1.
    std::string to_string(value_type a) const {
        if (a > p_ / 2) return "-" + std::to_string(p_ - a);
        return std::to_string(a);
    }

    bool operator==(const PrimeField& other) const { return p_ == other.p_; }

    static bool is_prime(std::uint32_t n) {
        if (n < 2) return false;
        for (std::uint32_t d = 2; static_cast<std::uint64_t>(d) * d <= n; ++d)
            if (n % d == 0) return false;
        return true;
    }

private:
    std::uint32_t p_;
};

// Arbitrary-precision rationals; the certifying mode.
class RationalField {
public:
    using value_type = mpq_class;

    std::string name() const { return "rational"; }

    value_type zero() const { return 0; }
    value_type one() const { return 1; }
    value_type from_int(long long v) const { return mpq_class(static_cast<long>(v)); }

    bool is_zero(const value_type& a) const { return sgn(a) == 0; }
    bool is_one(const value_type& a) const { return a == 1; }

    value_type add(const value_type& a, const value_type& b) const { return a + b; }
    value_type sub(const value_type& a, const value_type& b) const { return a - b; }
    value_type neg(const value_type& a) const { return -a; }
    value_type mul(const value_type& a, const value_type& b) const { return a * b; }
    value_type inv(const value_type& a) const {
        if (sgn(a) == 0) throw ArgumentError("division by zero in rational field");
        return 1 / a;
    }

    std::string to_string(const value_type& a) const { return a.get_str(); }

    bool operator==(const RationalField&) const { return true; }
};

// Reduction of a rational into a prime field; used to compare the two modes.
inline PrimeField::value_type reduce(const PrimeField& f, const mpq_class& q) {
    mpz_class p = f.modulus();
    mpz_class num = q.get_num() % p;
    mpz_class den = q.get_den() % p;
    if (num < 0) num += p;
    if (den < 0) den += p;
    return f.mul(static_cast<std::uint32_t>(num.get_ui()),
                 f.inv(static_cast<std::uint32_t>(den.get_ui())));
}

} // namespace detfacet
