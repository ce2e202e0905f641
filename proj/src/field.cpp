#include "qmr/field.hpp"

#include <algorithm>
#include <sstream>

namespace qmr {

namespace {

constexpr Code kTableLimit = Code{1} << 20;
constexpr Code kAddTableLimit = 1024;
constexpr Code kMaxOrder = Code{1} << 62;

using Poly = std::vector<std::uint64_t>;

void trim(Poly& a)
{
    while (!a.empty() && a.back() == 0)
        a.pop_back();
}

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p)
{
    // p prime, a != 0 mod p
    std::uint64_t result = 1;
    std::uint64_t base = a % p;
    std::uint64_t e = p - 2;
    while (e) {
        if (e & 1)
            result = static_cast<std::uint64_t>(static_cast<unsigned __int128>(result) * base % p);
        base = static_cast<std::uint64_t>(static_cast<unsigned __int128>(base) * base % p);
        e >>= 1;
    }
    return result;
}

Poly poly_mod(Poly a, const Poly& f, std::uint64_t p)
{
    trim(a);
    const std::size_t df = f.size() - 1;
    const std::uint64_t lead_inv = inv_mod(f.back(), p);
    while (a.size() > df) {
        const std::size_t shift = a.size() - 1 - df;
        const std::uint64_t c = a.back() * lead_inv % p;
        for (std::size_t i = 0; i <= df; ++i)
            a[shift + i] = (a[shift + i] + (p - c) * f[i]) % p;
        trim(a);
    }
    return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& f, std::uint64_t p)
{
    if (a.empty() || b.empty())
        return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    return poly_mod(std::move(r), f, p);
}

Poly poly_powmod(Poly base, std::uint64_t e, const Poly& f, std::uint64_t p)
{
    Poly result{1};
    result = poly_mod(result, f, p);
    base = poly_mod(std::move(base), f, p);
    while (e) {
        if (e & 1)
            result = poly_mulmod(result, base, f, p);
        base = poly_mulmod(base, base, f, p);
        e >>= 1;
    }
    return result;
}

Poly poly_gcd(Poly a, Poly b, std::uint64_t p)
{
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly r = poly_mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

Poly poly_sub(Poly a, const Poly& b, std::uint64_t p)
{
    if (a.size() < b.size())
        a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i)
        a[i] = (a[i] + p - b[i]) % p;
    trim(a);
    return a;
}

}  // namespace

bool is_prime(std::uint64_t n)
{
    if (n < 2)
        return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n)
{
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0)
                n /= d;
        }
    }
    if (n > 1)
        out.push_back(n);
    return out;
}

bool is_irreducible(std::uint32_t p, std::span<const std::uint32_t> monic)
{
    if (monic.size() < 2 || monic.back() != 1)
        return false;
    const unsigned n = static_cast<unsigned>(monic.size() - 1);
    Poly f(monic.begin(), monic.end());
    const Poly x = poly_mod(Poly{0, 1}, f, p);

    const auto divisors = prime_factors(n);
    std::vector<unsigned> checkpoints;
    for (auto l : divisors)
        checkpoints.push_back(n / static_cast<unsigned>(l));

    Poly h = x;
    for (unsigned i = 1; i <= n; ++i) {
        h = poly_powmod(h, p, f, p);
        if (std::find(checkpoints.begin(), checkpoints.end(), i) != checkpoints.end()) {
            Poly g = poly_gcd(f, poly_sub(h, x, p), p);
            if (g.size() != 1)
                return false;
        }
    }
    return h == x;
}

std::vector<std::uint32_t> default_modulus(std::uint32_t p, unsigned degree)
{
    if (!is_prime(p))
        throw InvalidInput("characteristic " + std::to_string(p) + " is not prime");
    if (degree == 0)
        throw InvalidInput("field degree must be at least 1");
    // Enumerate coefficient tuples (c_0, ..., c_{n-1}) lexicographically with
    // c_0 most significant.
    std::vector<std::uint32_t> coeffs(degree + 1, 0);
    coeffs[degree] = 1;
    // Above degree one a zero constant term means x divides the polynomial.
    if (degree > 1)
        coeffs[0] = 1;
    while (true) {
        if (is_irreducible(p, coeffs))
            return coeffs;
        int pos = static_cast<int>(degree) - 1;
        while (pos >= 0 && coeffs[pos] == p - 1) {
            coeffs[pos] = 0;
            --pos;
        }
        if (pos < 0)
            break;
        ++coeffs[pos];
    }
    throw InvariantViolation("no irreducible polynomial of degree " + std::to_string(degree));
}

Field::Field(std::uint32_t p, std::vector<std::uint32_t> modulus) : p_(p), modulus_(std::move(modulus))
{
    if (!is_prime(p_))
        throw InvalidInput("characteristic " + std::to_string(p_) + " is not prime");
    if (modulus_.size() < 2)
        throw InvalidInput("modulus must have degree at least 1");
    for (auto c : modulus_)
        if (c >= p_)
            throw InvalidInput("modulus coefficient out of range for p = " + std::to_string(p_));
    if (modulus_.back() != 1)
        throw InvalidInput("modulus must be monic");
    degree_ = static_cast<unsigned>(modulus_.size() - 1);

    powers_of_p_.assign(degree_ + 1, 1);
    for (unsigned i = 1; i <= degree_; ++i) {
        if (powers_of_p_[i - 1] > kMaxOrder / p_)
            throw InvalidInput("field order p^" + std::to_string(degree_) + " exceeds 2^62");
        powers_of_p_[i] = powers_of_p_[i - 1] * p_;
    }
    order_ = powers_of_p_[degree_];

    if (!is_irreducible(p_, modulus_))
        throw InvalidInput("modulus is not irreducible over F_" + std::to_string(p_));

    if (p_ == 2)
        kind_ = Kind::binary;
    else if (degree_ == 1)
        kind_ = Kind::prime;
    else
        kind_ = Kind::generic;

    if (kind_ == Kind::generic && order_ <= kAddTableLimit) {
        add_table_.resize(order_ * order_);
        for (Code a = 0; a < order_; ++a)
            for (Code b = 0; b < order_; ++b)
                add_table_[a * order_ + b] = static_cast<std::uint32_t>(slow_add({a}, {b}).code);
    }
    if (degree_ > 1 && order_ <= kTableLimit)
        build_tables();
}

Field Field::prime(std::uint32_t p)
{
    return Field(p, {0, 1});
}

void Field::check(Elt a) const
{
    if (!contains(a))
        throw InvalidInput("element code " + std::to_string(a.code) + " does not belong to " + describe());
}

Elt Field::from_coeffs(std::span<const std::uint32_t> coeffs) const
{
    if (coeffs.size() != degree_)
        throw InvalidInput("expected " + std::to_string(degree_) + " coefficients, got " +
                           std::to_string(coeffs.size()));
    Code code = 0;
    for (unsigned i = 0; i < degree_; ++i) {
        if (coeffs[i] >= p_)
            throw InvalidInput("coefficient out of range for p = " + std::to_string(p_));
        code += coeffs[i] * powers_of_p_[i];
    }
    return {code};
}

std::vector<std::uint32_t> Field::coeffs(Elt a) const
{
    std::vector<std::uint32_t> out(degree_);
    for (unsigned i = 0; i < degree_; ++i)
        out[i] = digit(a, i);
    return out;
}

std::uint32_t Field::digit(Elt a, unsigned i) const
{
    if (kind_ == Kind::binary)
        return static_cast<std::uint32_t>((a.code >> i) & 1);
    return static_cast<std::uint32_t>((a.code / powers_of_p_[i]) % p_);
}

Elt Field::slow_add(Elt a, Elt b) const
{
    Code out = 0;
    Code x = a.code, y = b.code;
    for (unsigned i = 0; i < degree_; ++i) {
        Code s = x % p_ + y % p_;
        if (s >= p_)
            s -= p_;
        out += s * powers_of_p_[i];
        x /= p_;
        y /= p_;
    }
    return {out};
}

Elt Field::slow_neg(Elt a) const
{
    Code out = 0;
    Code x = a.code;
    for (unsigned i = 0; i < degree_; ++i) {
        Code d = x % p_;
        out += (d == 0 ? 0 : p_ - d) * powers_of_p_[i];
        x /= p_;
    }
    return {out};
}

Elt Field::slow_mul(Elt a, Elt b) const
{
    if (kind_ == Kind::binary) {
        unsigned __int128 prod = 0;
        const unsigned __int128 wide = a.code;
        Code y = b.code;
        for (unsigned i = 0; y; ++i, y >>= 1)
            if (y & 1)
                prod ^= wide << i;
        unsigned __int128 f = 0;
        for (unsigned i = 0; i <= degree_; ++i)
            if (modulus_[i])
                f |= static_cast<unsigned __int128>(1) << i;
        for (int i = 2 * static_cast<int>(degree_) - 2; i >= static_cast<int>(degree_); --i)
            if ((prod >> i) & 1)
                prod ^= f << (i - degree_);
        return {static_cast<Code>(prod)};
    }
    Poly f(modulus_.begin(), modulus_.end());
    Poly x(degree_), y(degree_);
    for (unsigned i = 0; i < degree_; ++i) {
        x[i] = digit(a, i);
        y[i] = digit(b, i);
    }
    trim(x);
    trim(y);
    Poly r = poly_mulmod(x, y, f, p_);
    Code code = 0;
    for (std::size_t i = 0; i < r.size(); ++i)
        code += r[i] * powers_of_p_[i];
    return {code};
}

Elt Field::slow_pow(Elt a, std::uint64_t e) const
{
    Elt result = one();
    Elt base = a;
    while (e) {
        if (e & 1)
            result = slow_mul(result, base);
        base = slow_mul(base, base);
        e >>= 1;
    }
    return result;
}

void Field::build_tables()
{
    const Code group = order_ - 1;
    const auto factors = prime_factors(group);
    Elt gen{};
    for (Code c = 2; c < order_; ++c) {
        bool primitive = true;
        for (auto l : factors) {
            if (slow_pow({c}, group / l) == one()) {
                primitive = false;
                break;
            }
        }
        if (primitive) {
            gen = {c};
            break;
        }
    }
    if (gen.is_zero())
        throw InvariantViolation("no primitive element found in " + describe());
    exp_.resize(2 * group);
    log_.assign(order_, 0);
    Elt x = one();
    for (Code i = 0; i < group; ++i) {
        exp_[i] = static_cast<std::uint32_t>(x.code);
        exp_[i + group] = static_cast<std::uint32_t>(x.code);
        log_[x.code] = static_cast<std::uint32_t>(i);
        x = slow_mul(x, gen);
    }
}

Elt Field::inv(Elt a) const
{
    if (a.is_zero())
        throw InvalidInput("division by zero in " + describe());
    if (kind_ == Kind::prime)
        return {inv_mod(a.code, p_)};
    if (!log_.empty())
        return {exp_[(order_ - 1) - log_[a.code]]};
    if (degree_ == 1)
        return a;
    return slow_pow(a, order_ - 2);
}

Elt Field::pow(Elt a, std::uint64_t e) const
{
    if (e == 0)
        return one();
    if (a.is_zero())
        return zero();
    const Code group = order_ - 1;
    const std::uint64_t r = e % group;
    if (!log_.empty()) {
        const auto l = static_cast<unsigned __int128>(log_[a.code]) * r % group;
        return {exp_[static_cast<Code>(l)]};
    }
    if (kind_ == Kind::prime) {
        Code result = 1, base = a.code;
        std::uint64_t k = r;
        while (k) {
            if (k & 1)
                result = result * base % p_;
            base = base * base % p_;
            k >>= 1;
        }
        return {result};
    }
    if (degree_ == 1)
        return one();
    return slow_pow(a, r);
}

Elt Field::frobenius(Elt a, std::uint64_t k) const
{
    k %= degree_;
    if (k == 0 || a.is_zero() || degree_ == 1)
        return a;
    if (!log_.empty()) {
        const Code group = order_ - 1;
        unsigned __int128 e = 1;
        for (std::uint64_t i = 0; i < k; ++i)
            e = e * p_ % group;
        return pow(a, static_cast<std::uint64_t>(e));
    }
    Elt x = a;
    for (std::uint64_t i = 0; i < k; ++i)
        x = pow(x, p_);
    return x;
}

Elt Field::arith(Elt a, Elt b, ArithOp op) const
{
    check(a);
    check(b);
    switch (op) {
    case ArithOp::add:
        return add(a, b);
    case ArithOp::sub:
        return sub(a, b);
    case ArithOp::mul:
        return mul(a, b);
    case ArithOp::div:
        return div(a, b);
    }
    throw InvalidInput("unknown arithmetic operation");
}

void Field::axpy(std::span<Elt> y, Elt a, std::span<const Elt> x) const
{
    if (a.is_zero())
        return;
    const std::size_t n = y.size();
    if (kind_ == Kind::binary) {
        if (a.code == 1) {
            for (std::size_t i = 0; i < n; ++i)
                y[i].code ^= x[i].code;
            return;
        }
        if (!log_.empty()) {
            const std::uint32_t la = log_[a.code];
            for (std::size_t i = 0; i < n; ++i)
                if (x[i].code)
                    y[i].code ^= exp_[la + log_[x[i].code]];
            return;
        }
        for (std::size_t i = 0; i < n; ++i)
            if (x[i].code)
                y[i].code ^= slow_mul(a, x[i]).code;
        return;
    }
    if (kind_ == Kind::prime) {
        for (std::size_t i = 0; i < n; ++i)
            y[i].code = (y[i].code + a.code * x[i].code) % p_;
        return;
    }
    for (std::size_t i = 0; i < n; ++i)
        if (x[i].code)
            y[i] = add(y[i], mul(a, x[i]));
}

void Field::scale(std::span<Elt> y, Elt a) const
{
    if (a.code == 1)
        return;
    for (auto& v : y)
        v = mul(v, a);
}

std::string Field::describe() const
{
    std::ostringstream os;
    os << "F_" << p_;
    if (degree_ > 1)
        os << "^" << degree_;
    os << " mod [";
    for (std::size_t i = 0; i < modulus_.size(); ++i)
        os << (i ? "," : "") << modulus_[i];
    os << "]";
    return os.str();
}

}  // namespace qmr
