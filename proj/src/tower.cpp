#include "qmr/tower.hpp"

#include <string>

namespace qmr {

namespace {

constexpr Code kExpandCacheLimit = Code{1} << 16;

Elt eval_poly(const Field& f, const std::vector<std::uint32_t>& coeffs, Elt x)
{
    Elt acc{};
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
        acc = f.add(f.mul(acc, x), Elt{*it});
    return acc;
}

}  // namespace

TowerPtr FieldTower::create(std::uint32_t p, std::uint32_t h, std::uint32_t m)
{
    return create(FieldSpec{p, h, m, {}});
}

TowerPtr FieldTower::create(FieldSpec spec)
{
    return std::make_shared<const FieldTower>(std::move(spec), private_tag{});
}

FieldTower::FieldTower(FieldSpec spec, private_tag) : spec_(std::move(spec))
{
    if (!is_prime(spec_.p))
        throw InvalidInput("p = " + std::to_string(spec_.p) + " is not prime");
    if (spec_.h < 1 || spec_.m < 1)
        throw InvalidInput("h and m must be at least 1");
    const unsigned degree = spec_.h * spec_.m;
    if (spec_.modulus.empty())
        spec_.modulus = default_modulus(spec_.p, degree);
    if (spec_.modulus.size() != degree + 1)
        throw InvalidInput("modulus degree must equal h*m = " + std::to_string(degree));

    big_ = std::make_shared<const Field>(spec_.p, spec_.modulus);
    prime_ = std::make_shared<const Field>(Field::prime(spec_.p));
    small_ = spec_.h == 1 ? prime_ : std::make_shared<const Field>(spec_.p, default_modulus(spec_.p, spec_.h));

    // F_q inside F_{q^m}: identity on constants when q = p, otherwise through
    // the smallest root of the F_q modulus.
    embedding_.resize(small_->order());
    if (spec_.h == 1) {
        for (Code c = 0; c < small_->order(); ++c)
            embedding_[c] = Elt{c};
    } else {
        const auto basis = subfield_basis(1);
        std::optional<Elt> theta;
        std::vector<std::uint32_t> digits(basis.size(), 0);
        while (true) {
            Elt x{};
            for (std::size_t i = 0; i < basis.size(); ++i)
                for (std::uint32_t k = 0; k < digits[i]; ++k)
                    x = big_->add(x, basis[i]);
            if (eval_poly(*big_, small_->modulus(), x).is_zero() && (!theta || x < *theta))
                theta = x;
            std::size_t pos = 0;
            while (pos < digits.size() && digits[pos] == spec_.p - 1)
                digits[pos++] = 0;
            if (pos == digits.size())
                break;
            ++digits[pos];
        }
        if (!theta)
            throw InvariantViolation("F_q modulus has no root in F_{q^m}");
        for (Code c = 0; c < small_->order(); ++c) {
            Elt x{};
            Elt power = big_->one();
            for (unsigned i = 0; i < spec_.h; ++i) {
                const auto d = small_->digit(Elt{c}, i);
                if (d)
                    x = big_->add(x, big_->mul(Elt{d}, power));
                power = big_->mul(power, *theta);
            }
            embedding_[c] = x;
        }
    }

    const auto divisors = prime_factors(spec_.m);
    for (Code c = 1; c < big_->order(); ++c) {
        bool generates = true;
        for (auto l : divisors) {
            if (frobenius_q(Elt{c}, spec_.m / l) == Elt{c}) {
                generates = false;
                break;
            }
        }
        if (generates) {
            gamma_ = Elt{c};
            break;
        }
    }
    gamma_powers_.resize(spec_.m);
    gamma_powers_[0] = big_->one();
    for (std::uint32_t j = 1; j < spec_.m; ++j)
        gamma_powers_[j] = big_->mul(gamma_powers_[j - 1], gamma_);

    // Column j*h + i holds the power-basis digits of θ^i γ^j.
    from_coords_ = Mat(prime_, degree, degree);
    for (std::uint32_t j = 0; j < spec_.m; ++j) {
        for (std::uint32_t i = 0; i < spec_.h; ++i) {
            Code theta_i = 1;
            for (std::uint32_t k = 0; k < i; ++k)
                theta_i *= spec_.p;
            const Elt basis_elt = big_->mul(embedding_[theta_i], gamma_powers_[j]);
            for (unsigned r = 0; r < degree; ++r)
                from_coords_(r, j * spec_.h + i) = Elt{big_->digit(basis_elt, r)};
        }
    }
    to_coords_ = inverse(from_coords_);

    if (big_->order() <= kExpandCacheLimit) {
        std::vector<std::uint32_t> cache(big_->order() * spec_.m);
        std::vector<Elt> tmp(spec_.m);
        for (Code c = 0; c < big_->order(); ++c) {
            expand_into(Elt{c}, tmp);
            for (std::uint32_t j = 0; j < spec_.m; ++j)
                cache[c * spec_.m + j] = static_cast<std::uint32_t>(tmp[j].code);
        }
        expand_cache_ = std::move(cache);
    }
}

Code FieldTower::power_basis_code(unsigned j) const
{
    Code c = 1;
    for (unsigned k = 0; k < j; ++k)
        c *= spec_.p;
    return c;
}

Elt FieldTower::frobenius_q(Elt x, std::uint64_t e) const
{
    return big_->frobenius(x, (e % spec_.m) * spec_.h);
}

bool FieldTower::is_in_subfield(Elt x, std::uint32_t r) const
{
    if (r == 0 || spec_.m % r != 0)
        throw InvalidInput("subfield degree " + std::to_string(r) + " does not divide m = " +
                           std::to_string(spec_.m));
    return frobenius_q(x, r) == x;
}

std::vector<Elt> FieldTower::subfield_basis(std::uint32_t r) const
{
    if (r == 0 || spec_.m % r != 0)
        throw InvalidInput("subfield degree " + std::to_string(r) + " does not divide m = " +
                           std::to_string(spec_.m));
    const Mat map = fp_linear_map([&](Elt x) { return big_->sub(frobenius_q(x, r), x); });
    const Mat kernel = kernel_basis(map);
    std::vector<Elt> out;
    for (std::size_t i = 0; i < kernel.rows(); ++i)
        out.push_back(from_fp_coords(kernel.row(i)));
    return out;
}

Elt FieldTower::from_fp_coords(std::span<const Elt> coords) const
{
    Code code = 0;
    for (std::size_t i = 0; i < coords.size(); ++i)
        code += coords[i].code * power_basis_code(static_cast<unsigned>(i));
    return Elt{code};
}

std::optional<Elt> FieldTower::to_scalar(Elt x) const
{
    if (frobenius_q(x, 1) != x)
        return std::nullopt;
    return expand(x)[0];
}

void FieldTower::expand_into(Elt x, std::span<Elt> out) const
{
    const std::uint32_t m = spec_.m;
    if (!expand_cache_.empty()) {
        const std::uint32_t* src = expand_cache_.data() + x.code * m;
        for (std::uint32_t j = 0; j < m; ++j)
            out[j] = Elt{src[j]};
        return;
    }
    const unsigned degree = big_->degree();
    const std::uint32_t p = spec_.p;
    std::vector<Code> digits(degree);
    for (unsigned i = 0; i < degree; ++i)
        digits[i] = big_->digit(x, i);
    for (std::uint32_t j = 0; j < m; ++j) {
        Code code = 0, place = 1;
        for (std::uint32_t i = 0; i < spec_.h; ++i) {
            const std::size_t row = j * spec_.h + i;
            Code acc = 0;
            for (unsigned c = 0; c < degree; ++c)
                acc += to_coords_(row, c).code * digits[c];
            code += (acc % p) * place;
            place *= p;
        }
        out[j] = Elt{code};
    }
}

std::vector<Elt> FieldTower::expand(Elt x) const
{
    std::vector<Elt> out(spec_.m);
    expand_into(x, out);
    return out;
}

Elt FieldTower::contract(std::span<const Elt> coords) const
{
    if (coords.size() != spec_.m)
        throw InvalidInput("expected " + std::to_string(spec_.m) + " F_q-coordinates");
    Elt x{};
    for (std::uint32_t j = 0; j < spec_.m; ++j) {
        if (coords[j].is_zero())
            continue;
        x = big_->add(x, coords[j].code == 1 ? gamma_powers_[j] : big_->mul(embed(coords[j]), gamma_powers_[j]));
    }
    return x;
}

}  // namespace qmr
