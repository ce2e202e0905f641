#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qmr/errors.hpp"

namespace qmr {

using Code = std::uint64_t;

/// Element of a finite field F_p[x]/(f). The code packs the coefficient
/// vector in base p with the constant term as the least significant digit,
/// so equal elements have equal codes and codes order elements canonically.
struct Elt {
    Code code = 0;

    friend constexpr auto operator<=>(const Elt&, const Elt&) = default;
    constexpr bool is_zero() const { return code == 0; }
};

enum class ArithOp { add, sub, mul, div };

/// The field F_p[x]/(modulus) for a monic irreducible modulus over F_p.
///
/// Arithmetic dispatches on three representations: p = 2 (XOR addition,
/// carry-less multiplication), degree one (integers mod p) and the generic
/// digit-vector case. Fields of order at most 2^20 also carry log/antilog
/// tables, which makes multiplication and inversion O(1).
class Field {
public:
    /// Throws InvalidInput unless p is prime and modulus is monic and irreducible.
    Field(std::uint32_t p, std::vector<std::uint32_t> modulus);

    /// F_p itself, realized as F_p[x]/(x).
    static Field prime(std::uint32_t p);

    std::uint32_t characteristic() const { return p_; }
    unsigned degree() const { return degree_; }
    Code order() const { return order_; }
    const std::vector<std::uint32_t>& modulus() const { return modulus_; }

    Elt zero() const { return {}; }
    Elt one() const { return {1}; }
    bool contains(Elt a) const { return a.code < order_; }
    /// Throws InvalidInput when the code does not belong to this field.
    void check(Elt a) const;

    Elt from_coeffs(std::span<const std::uint32_t> coeffs) const;
    std::vector<std::uint32_t> coeffs(Elt a) const;
    std::uint32_t digit(Elt a, unsigned i) const;

    Elt add(Elt a, Elt b) const
    {
        switch (kind_) {
        case Kind::binary:
            return {a.code ^ b.code};
        case Kind::prime: {
            Code s = a.code + b.code;
            return {s >= p_ ? s - p_ : s};
        }
        case Kind::generic:
            break;
        }
        if (!add_table_.empty())
            return {add_table_[a.code * order_ + b.code]};
        return slow_add(a, b);
    }

    Elt neg(Elt a) const
    {
        if (kind_ == Kind::binary)
            return a;
        if (kind_ == Kind::prime)
            return {a.code == 0 ? 0 : p_ - a.code};
        return slow_neg(a);
    }

    Elt sub(Elt a, Elt b) const
    {
        if (kind_ == Kind::binary)
            return {a.code ^ b.code};
        return add(a, neg(b));
    }

    Elt mul(Elt a, Elt b) const
    {
        if (a.code == 0 || b.code == 0)
            return {};
        if (kind_ == Kind::prime)
            return {a.code * b.code % p_};
        if (!log_.empty())
            return {exp_[log_[a.code] + log_[b.code]]};
        if (degree_ == 1)
            return {a.code & b.code};
        return slow_mul(a, b);
    }

    /// Throws InvalidInput on a zero argument.
    Elt inv(Elt a) const;
    Elt div(Elt a, Elt b) const { return mul(a, inv(b)); }
    Elt pow(Elt a, std::uint64_t e) const;
    /// a^(p^k).
    Elt frobenius(Elt a, std::uint64_t k) const;

    /// Checked arithmetic: validates both operands and the divisor.
    Elt arith(Elt a, Elt b, ArithOp op) const;

    /// y += a * x, elementwise.
    void axpy(std::span<Elt> y, Elt a, std::span<const Elt> x) const;
    /// y *= a, elementwise.
    void scale(std::span<Elt> y, Elt a) const;

    bool has_tables() const { return !log_.empty(); }

    friend bool operator==(const Field& a, const Field& b)
    {
        return a.p_ == b.p_ && a.modulus_ == b.modulus_;
    }

    std::string describe() const;

private:
    enum class Kind { binary, prime, generic };

    Elt slow_add(Elt a, Elt b) const;
    Elt slow_neg(Elt a) const;
    Elt slow_mul(Elt a, Elt b) const;
    Elt slow_pow(Elt a, std::uint64_t e) const;
    void build_tables();

    std::uint32_t p_ = 2;
    unsigned degree_ = 1;
    Code order_ = 2;
    std::vector<std::uint32_t> modulus_;
    Kind kind_ = Kind::binary;
    std::vector<Code> powers_of_p_;
    std::vector<std::uint32_t> log_;
    std::vector<std::uint32_t> exp_;
    std::vector<std::uint32_t> add_table_;
};

bool is_prime(std::uint64_t n);
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

/// Rabin's test: f monic of degree n is irreducible over F_p iff
/// x^(p^n) = x mod f and gcd(x^(p^(n/l)) - x, f) = 1 for each prime l | n.
bool is_irreducible(std::uint32_t p, std::span<const std::uint32_t> monic);

/// The smallest monic irreducible of the given degree over F_p, comparing
/// coefficient tuples lexicographically with the constant term first.
std::vector<std::uint32_t> default_modulus(std::uint32_t p, unsigned degree);

}  // namespace qmr
