#include "qmr/constructions.hpp"

#include <numeric>

#include "qmr/errors.hpp"

namespace qmr {

std::pair<std::uint32_t, std::uint32_t> prime_power(std::uint64_t q)
{
    if (q < 2)
        throw InvalidInput("q = " + std::to_string(q) + " is not a prime power");
    const auto factors = prime_factors(q);
    if (factors.size() != 1)
        throw InvalidInput("q = " + std::to_string(q) + " is not a prime power");
    std::uint32_t h = 0;
    for (std::uint64_t x = q; x > 1; x /= factors[0])
        ++h;
    return {static_cast<std::uint32_t>(factors[0]), h};
}

TowerPtr tower_for(std::uint64_t q, std::uint32_t m)
{
    const auto [p, h] = prime_power(q);
    return FieldTower::create(p, h, m);
}

// ---- subspaces of F_{q^m} --------------------------------------------------------

Subspace field_subspace(const FieldTower& tower, const std::vector<Elt>& elements)
{
    Mat rows(tower.small_ptr(), 0, tower.m());
    for (Elt x : elements)
        rows.append_row(tower.expand(x));
    return Subspace::span(rows);
}

std::vector<Elt> field_basis(const FieldTower& tower, const Subspace& s)
{
    if (s.ambient() != tower.m())
        throw InvalidInput("expected an F_q-subspace of F_{q^m}");
    std::vector<Elt> out;
    for (std::size_t i = 0; i < s.dim(); ++i)
        out.push_back(tower.contract(s.basis_row(i)));
    return out;
}

Subspace mul_span(const FieldTower& tower, const Subspace& u, const Subspace& v)
{
    std::vector<Elt> products;
    for (Elt a : field_basis(tower, u))
        for (Elt b : field_basis(tower, v))
            products.push_back(tower.big().mul(a, b));
    return field_subspace(tower, products);
}

Subspace scale(const FieldTower& tower, Elt x, const Subspace& v)
{
    std::vector<Elt> out;
    for (Elt b : field_basis(tower, v))
        out.push_back(tower.big().mul(x, b));
    return field_subspace(tower, out);
}

Subspace twisted(const FieldTower& tower, const Subspace& v, Elt xi)
{
    const Field& big = tower.big();
    std::vector<Elt> out;
    for (Elt b : field_basis(tower, v))
        out.push_back(big.add(b, big.mul(xi, tower.frobenius_q(b, 1))));
    return field_subspace(tower, out);
}

// ---- block systems ----------------------------------------------------------------

QSystem pseudoregulus_block(TowerPtr tower, const Subspace& v, std::size_t k, std::uint32_t mi)
{
    const auto basis = field_basis(*tower, v);
    if (k == 0)
        throw InvalidInput("block needs k >= 1");
    if (v.dim() <= k)
        throw InvalidInput("block needs k < n, got k = " + std::to_string(k) + ", n = " + std::to_string(v.dim()));
    for (Elt x : basis)
        if (!tower->is_in_subfield(x, mi))
            throw InvalidInput("V is not contained in F_{q^" + std::to_string(mi) + "}");
    std::vector<std::vector<Elt>> rows;
    for (Elt x : basis) {
        std::vector<Elt> row(k);
        for (std::size_t j = 0; j < k; ++j)
            row[j] = tower->frobenius_q(x, j);
        rows.push_back(std::move(row));
    }
    Subspace s = fq_span(*tower, k, rows);
    if (s.dim() != v.dim())
        throw InvariantViolation("pseudoregulus block lost dimension");
    return make_system(std::move(tower), k, std::move(s));
}

QSystem direct_sum_system(const std::vector<QSystem>& blocks)
{
    if (blocks.empty())
        throw InvalidInput("direct sum of no blocks");
    const TowerPtr& tower = blocks.front().tower;
    std::size_t k = 0;
    for (const auto& b : blocks) {
        if (!(b.tower->spec() == tower->spec()))
            throw InvalidInput("blocks live over different fields");
        k += b.k;
    }
    const std::size_t m = tower->m();
    Subspace total = Subspace::zero(tower->small_ptr(), m * k);
    std::size_t offset = 0;
    for (const auto& b : blocks) {
        total = sum(total, b.space.embed(m * k, m * offset));
        offset += b.k;
    }
    return make_system(tower, k, std::move(total));
}

void validate_block_specs(const std::vector<BlockSpec>& specs)
{
    if (specs.empty())
        throw InvalidInput("no blocks given");
    for (std::size_t i = 0; i < specs.size(); ++i) {
        const auto& s = specs[i];
        const std::string name = std::to_string(i + 1);
        if (s.k < 1 || s.k >= s.n)
            throw InvalidInput("block " + name + " needs 1 <= k_" + name + " < n_" + name);
        if (s.n > s.m)
            throw InvalidInput("block " + name + " needs n_" + name + " <= m_" + name);
        for (std::size_t j = 0; j < i; ++j)
            if (std::gcd(specs[j].m, s.m) != 1)
                throw InvalidInput("gcd(m_" + std::to_string(j + 1) + ",m_" + name + ") != 1");
    }
}

Subspace default_support(const FieldTower& tower, std::size_t /*index*/, const BlockSpec& spec)
{
    std::vector<Elt> kept;
    Subspace span = Subspace::zero(tower.small_ptr(), tower.m());
    for (Elt x : tower.subfield_basis(spec.m)) {
        if (span.dim() == spec.n)
            break;
        const auto coords = tower.expand(x);
        if (span.contains(coords))
            continue;
        kept.push_back(x);
        span = field_subspace(tower, kept);
    }
    if (span.dim() != spec.n)
        throw InvariantViolation("subfield basis does not reach F_q-dimension n_i");
    return span;
}

PseudoregulusSum coprime_pseudoregulus_sum(std::uint64_t q, const std::vector<BlockSpec>& specs,
                                           const SupportChooser& choose)
{
    validate_block_specs(specs);
    std::uint64_t m = 1;
    for (const auto& s : specs) {
        m *= s.m;
        if (m > 64)
            throw InvalidInput("m = m_1 ... m_t exceeds the supported extension degree");
    }
    PseudoregulusSum out;
    out.tower = tower_for(q, static_cast<std::uint32_t>(m));
    out.specs = specs;
    for (std::size_t i = 0; i < specs.size(); ++i) {
        Subspace v = choose(*out.tower, i, specs[i]);
        if (v.dim() != specs[i].n)
            throw InvalidInput("chosen V_" + std::to_string(i + 1) + " has the wrong dimension");
        out.blocks.push_back(pseudoregulus_block(out.tower, v, specs[i].k, specs[i].m));
        out.supports.push_back(std::move(v));
        out.kvec.push_back(specs[i].k);
    }
    out.system = direct_sum_system(out.blocks);
    return out;
}

// ---- rank-one pairs -----------------------------------------------------------------

FieldPair polynomial_pair(const FieldTower& tower, std::size_t n1, std::size_t n2)
{
    if (n1 == 0 || n2 == 0)
        throw InvalidInput("pair dimensions must be positive");
    if (tower.m() < n1 * n2)
        throw InvalidInput("polynomial pair needs m >= n1 n2");
    const Field& big = tower.big();
    const Elt gamma = tower.primitive_generator();
    std::vector<Elt> a, b;
    for (std::size_t i = 0; i < n1; ++i)
        a.push_back(big.pow(gamma, i));
    const Elt step = big.pow(gamma, n1);
    for (std::size_t j = 0; j < n2; ++j)
        b.push_back(big.pow(step, j));
    return {field_subspace(tower, a), field_subspace(tower, b)};
}

FieldPair subfield_xi_pair(const FieldTower& tower, std::uint32_t r, Elt xi)
{
    if (r == 0 || tower.m() % r != 0 || r == tower.m())
        throw InvalidInput("r must be a proper divisor of m");
    if (tower.is_in_subfield(xi, r))
        throw InvalidInput("ξ lies in F_{q^r}");
    const Subspace sub = field_subspace(tower, tower.subfield_basis(r));
    if (sub.dim() != r)
        throw InvariantViolation("F_{q^r} does not have F_q-dimension r");
    Subspace b = twisted(tower, sub, xi);
    if (b.dim() != r)
        throw InvariantViolation("a -> a + ξ a^q is not injective on F_{q^r}");
    return {sub, std::move(b)};
}

Mat iterated_artin_schreier(const FieldTower& tower, std::size_t i)
{
    const Mat step = tower.fp_linear_map([&](Elt x) { return tower.big().sub(tower.frobenius_q(x, 1), x); });
    Mat out = Mat::identity(tower.prime_ptr(), step.rows());
    for (std::size_t j = 0; j < i; ++j)
        out = multiply(step, out);
    return out;
}

Subspace artin_schreier_kernel(const FieldTower& tower, std::size_t i)
{
    const Mat kernel = kernel_basis(iterated_artin_schreier(tower, i));
    std::vector<Elt> elements;
    for (std::size_t r = 0; r < kernel.rows(); ++r)
        elements.push_back(tower.from_fp_coords(kernel.row(r)));
    return field_subspace(tower, elements);
}

std::optional<Elt> find_separating_scalar(const FieldTower& tower, const Subspace& v, std::uint64_t* trials)
{
    const std::uint64_t order = tower.big().order();
    std::uint64_t count = 0;
    std::optional<Elt> found;
    for (Code c = 1; c < order; ++c) {
        ++count;
        const Elt xi{c};
        if (intersect(v, scale(tower, xi, v)).dim() == 0) {
            found = xi;
            break;
        }
    }
    if (trials)
        *trials = count;
    return found;
}

ModularPair modular_pair(std::uint32_t p, std::uint32_t h, std::uint32_t r, std::size_t n1, std::size_t n2)
{
    if (!is_prime(p) || h == 0 || r == 0)
        throw InvalidInput("modular pair needs a prime p and h, r >= 1");
    std::uint64_t m = 1;
    for (std::uint32_t i = 0; i < r; ++i) {
        m *= p;
        if (m > 64)
            throw InvalidInput("m = p^r exceeds the supported extension degree");
    }
    if (n1 == 0 || n2 == 0)
        throw InvalidInput("pair dimensions must be positive");
    const std::size_t l = n1 + n2 - 1;
    if (2 * l > m)
        throw InvalidInput("modular pair needs n1 + n2 - 1 <= m/2");

    ModularPair out;
    out.tower = FieldTower::create(p, h, static_cast<std::uint32_t>(m));
    const FieldTower& tower = *out.tower;
    const Subspace f1 = artin_schreier_kernel(tower, n1);
    const Subspace f2 = artin_schreier_kernel(tower, n2);
    const Subspace fl = artin_schreier_kernel(tower, l);
    out.dim_f1 = f1.dim();
    out.dim_f2 = f2.dim();
    out.dim_fl = fl.dim();
    if (out.dim_f1 != n1 || out.dim_f2 != n2 || out.dim_fl != l)
        throw InvariantViolation("kernel of the iterated x^q - x has the wrong dimension");

    const auto xi = find_separating_scalar(tower, fl, &out.xi_trials);
    if (!xi)
        throw InvariantViolation("no ξ with F_L ∩ ξ F_L = {0} although dim F_L <= m/2");
    out.xi = *xi;
    out.pair = {f1, twisted(tower, f2, *xi)};
    if (out.pair.b.dim() != n2)
        throw InvariantViolation("a -> a + ξ a^q is not injective on F_{n2}");
    return out;
}

}  // namespace qmr
