#include "qmr/codes.hpp"

#include <limits>

#include "qmr/enumerate.hpp"

namespace qmr {

QSystem make_system(TowerPtr tower, std::size_t k, Subspace space)
{
    if (space.ambient() != tower->m() * k)
        throw InvalidInput("system must live in F_{q^m}^" + std::to_string(k));
    if (!(space.field() == tower->small()))
        throw InvalidInput("system must be an F_q-subspace");
    if (rho(*tower, space) != k)
        throw InvalidInput("system does not span F_{q^m}^" + std::to_string(k) + " over F_{q^m}");
    return QSystem{std::move(tower), k, std::move(space)};
}

RankMetricCode::RankMetricCode(TowerPtr tower, Mat generator) : tower_(std::move(tower)), g_(std::move(generator))
{
    if (!(g_.field() == tower_->big()))
        throw InvalidInput("generator matrix must have entries in F_{q^m}");
    if (g_.rows() == 0 || rank(g_) != g_.rows())
        throw InvalidInput("generator matrix must have full row rank");
    nondegenerate_ = rank(psi_matrix(*this)) == g_.cols();
}

std::vector<Elt> RankMetricCode::encode(std::span<const Elt> u) const
{
    if (u.size() != k())
        throw InvalidInput("message length must be k = " + std::to_string(k()));
    const Field& big = tower_->big();
    std::vector<Elt> out(n());
    for (std::size_t r = 0; r < k(); ++r)
        if (!u[r].is_zero())
            big.axpy(out, u[r], g_.row(r));
    return out;
}

Mat psi_matrix(const RankMetricCode& code)
{
    const auto& tower = *code.tower();
    const auto& g = code.generator();
    Mat psi(tower.small_ptr(), g.cols(), tower.m() * g.rows());
    std::vector<Elt> column(g.rows());
    for (std::size_t i = 0; i < g.cols(); ++i) {
        for (std::size_t r = 0; r < g.rows(); ++r)
            column[r] = g(r, i);
        auto e = expand_vector(tower, column);
        std::copy(e.begin(), e.end(), psi.row(i).begin());
    }
    return psi;
}

std::vector<Elt> psi_g(const RankMetricCode& code, std::span<const Elt> v)
{
    if (v.size() != code.n())
        throw InvalidInput("ψ_G takes vectors of F_q^" + std::to_string(code.n()));
    const auto& tower = *code.tower();
    const Field& big = tower.big();
    std::vector<Elt> out(code.k());
    for (std::size_t i = 0; i < code.n(); ++i) {
        if (v[i].is_zero())
            continue;
        const Elt s = tower.embed(v[i]);
        for (std::size_t r = 0; r < code.k(); ++r)
            out[r] = big.add(out[r], big.mul(s, code.generator()(r, i)));
    }
    return out;
}

QSystem code_to_system(const RankMetricCode& code)
{
    if (!code.nondegenerate())
        throw InvalidInput("code is degenerate: the columns of G are F_q-dependent");
    return make_system(code.tower(), code.k(), Subspace::span(psi_matrix(code)));
}

RankMetricCode system_to_code(const QSystem& s)
{
    const Mat rows = contracted_basis(*s.tower, s.space);
    return RankMetricCode(s.tower, transpose(rows));
}

std::string to_string(DistanceMethod m)
{
    switch (m) {
    case DistanceMethod::automatic:
        return "automatic";
    case DistanceMethod::codeword:
        return "codeword";
    case DistanceMethod::hyperplane:
        return "hyperplane";
    }
    return "unknown";
}

namespace {

BigInt power(std::uint64_t base, std::size_t e)
{
    return boost::multiprecision::pow(BigInt(base), static_cast<unsigned>(e));
}

DistanceReport codeword_scan(const RankMetricCode& code, std::uint64_t budget)
{
    const auto& tower = *code.tower();
    const Code big_q = tower.big().order();
    const BigInt total = power(big_q, code.k()) - 1;
    require_budget(total, budget, "codeword scan");
    DistanceReport report;
    report.method = DistanceMethod::codeword;
    report.distance = std::numeric_limits<std::size_t>::max();
    std::vector<Elt> u(code.k());
    while (true) {
        std::size_t pos = 0;
        while (pos < u.size() && u[pos].code + 1 == big_q)
            u[pos++] = Elt{};
        if (pos == u.size())
            break;
        ++u[pos].code;
        ++report.scanned;
        const auto c = code.encode(u);
        const auto w = rank_weight(tower, c);
        if (w < report.distance) {
            report.distance = w;
            report.witness = c;
            report.witness_weight = w;
        }
    }
    return report;
}

DistanceReport hyperplane_scan(const RankMetricCode& code, std::uint64_t budget)
{
    const auto& tower = *code.tower();
    const QSystem s = code_to_system(code);
    SubspaceEnumerator points(tower.big_ptr(), code.k(), 1);
    require_budget(points.count(), budget, "hyperplane scan");
    DistanceReport report;
    report.method = DistanceMethod::hyperplane;
    std::size_t best = 0;
    for (; points.valid(); points.advance()) {
        ++report.scanned;
        const std::size_t w = weight(s.space, annihilated_subspace(tower, points.current()));
        if (report.witness.empty() || w > best) {
            best = w;
            report.witness = points.current().row_vector(0);
        }
    }
    report.witness_weight = best;
    report.distance = code.n() - best;
    return report;
}

}  // namespace

DistanceReport min_rank_distance(const RankMetricCode& code, DistanceMethod method, std::uint64_t budget)
{
    if (method == DistanceMethod::automatic)
        method = code.k() == 1 ? DistanceMethod::codeword : DistanceMethod::hyperplane;
    if (method == DistanceMethod::codeword)
        return codeword_scan(code, budget);
    return hyperplane_scan(code, budget);
}

bool is_mrd(const RankMetricCode& code, std::uint64_t budget)
{
    return min_rank_distance(code, DistanceMethod::automatic, budget).distance == code.n() - code.k() + 1;
}

Mat gabidulin_generator(const FieldTower& tower, std::size_t k, const std::vector<Elt>& alphas)
{
    const std::size_t n = alphas.size();
    if (k == 0 || k > n)
        throw InvalidInput("Gabidulin code needs 1 <= k <= n");
    if (n > tower.m())
        throw InvalidInput("Gabidulin code needs n <= m");
    Mat g(tower.big_ptr(), k, n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < k; ++i)
            g(i, j) = tower.frobenius_q(alphas[j], i);
    Mat coords(tower.small_ptr(), 0, tower.m());
    for (Elt a : alphas)
        coords.append_row(tower.expand(a));
    if (rank(coords) != n)
        throw InvalidInput("Gabidulin evaluation points must be F_q-linearly independent");
    return g;
}

Subspace orthogonal_complement(const Subspace& s)
{
    if (s.dim() == 0)
        return Subspace::full(s.field_ptr(), s.ambient());
    return Subspace::span(kernel_basis(s.basis()));
}

SupportDuality verify_support_duality(const RankMetricCode& code, std::span<const Elt> u)
{
    if (!code.nondegenerate())
        throw InvalidInput("support duality needs a nondegenerate code");
    if (u.size() != code.k())
        throw InvalidInput("u must have k = " + std::to_string(code.k()) + " entries");
    const auto& tower = *code.tower();
    const QSystem s = code_to_system(code);

    // Left side: intersect S with the hyperplane u^⊥ in F_q^{mk}, then pull back.
    Mat w(tower.big_ptr(), 1, code.k());
    std::copy(u.begin(), u.end(), w.row(0).begin());
    const Subspace meet = intersect(s.space, annihilated_subspace(tower, w));
    const Mat psi = psi_matrix(code);
    Mat pre(tower.small_ptr(), 0, code.n());
    for (std::size_t i = 0; i < meet.dim(); ++i) {
        auto v = solve_left(psi, meet.basis_row(i));
        if (!v)
            throw InvariantViolation("intersection with S left the image of ψ_G");
        pre.append_row(*v);
    }
    SupportDuality out;
    out.lhs = Subspace::span(pre);
    out.rhs = orthogonal_complement(support(tower, code.encode(u)));
    out.holds = out.lhs == out.rhs;
    return out;
}

}  // namespace qmr
