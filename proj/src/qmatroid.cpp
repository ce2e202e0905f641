#include "qmr/qmatroid.hpp"

#include <algorithm>
#include <mutex>
#include <random>

#include "qmr/enumerate.hpp"

namespace qmr {

void RankOracle::check_argument(const Subspace& v) const
{
    if (v.ambient() != n_)
        throw InvalidInput("subspace of F_q^" + std::to_string(v.ambient()) + " given to an oracle on F_q^" +
                           std::to_string(n_));
    if (!(v.field() == *field_))
        throw InvalidInput("subspace and oracle are defined over different fields");
}

std::string to_string(RankOracle::Kind kind)
{
    switch (kind) {
    case RankOracle::Kind::uniform:
        return "uniform";
    case RankOracle::Kind::representable:
        return "representable";
    case RankOracle::Kind::direct_sum:
        return "direct_sum";
    case RankOracle::Kind::pullback:
        return "pullback";
    case RankOracle::Kind::custom:
        return "custom";
    }
    return "unknown";
}

std::optional<std::size_t> RankMemo::find(const Subspace& v) const
{
    std::shared_lock lock(mutex_);
    auto it = table_.find(v);
    if (it == table_.end())
        return std::nullopt;
    return it->second;
}

void RankMemo::store(const Subspace& v, std::size_t rank)
{
    std::unique_lock lock(mutex_);
    table_.insert_or_assign(v, rank);
}

std::size_t RankMemo::size() const
{
    std::shared_lock lock(mutex_);
    return table_.size();
}

namespace {

class UniformOracle final : public RankOracle {
public:
    UniformOracle(FieldPtr fq, std::size_t k, std::size_t n) : RankOracle(Kind::uniform, std::move(fq), n), k_(k) {}

    std::size_t rank(const Subspace& v) const override
    {
        check_argument(v);
        return std::min(k_, v.dim());
    }

    std::string describe() const override
    {
        return "U_{" + std::to_string(k_) + "," + std::to_string(ground_dim()) + "}(" +
               std::to_string(field()->order()) + ")";
    }

private:
    std::size_t k_;
};

class RepresentableOracle final : public RankOracle {
public:
    RepresentableOracle(TowerPtr tower, Mat g)
        : RankOracle(Kind::representable, tower->small_ptr(), g.cols()), tower_(std::move(tower)), g_(std::move(g))
    {
    }

    std::size_t rank(const Subspace& u) const override
    {
        check_argument(u);
        const Field& big = tower_->big();
        // G A^U, with the columns of A^U the basis rows of U.
        Mat prod(tower_->big_ptr(), g_.rows(), u.dim());
        for (std::size_t c = 0; c < u.dim(); ++c) {
            auto basis = u.basis_row(c);
            for (std::size_t i = 0; i < g_.cols(); ++i) {
                if (basis[i].is_zero())
                    continue;
                const Elt s = tower_->embed(basis[i]);
                for (std::size_t r = 0; r < g_.rows(); ++r)
                    prod(r, c) = big.add(prod(r, c), big.mul(g_(r, i), s));
            }
        }
        return qmr::rank(prod);
    }

    std::string describe() const override
    {
        return "M_G, G " + std::to_string(g_.rows()) + "x" + std::to_string(g_.cols()) + " over " +
               tower_->big().describe();
    }

private:
    TowerPtr tower_;
    Mat g_;
};

class SpanRankOracle final : public RankOracle {
public:
    SpanRankOracle(TowerPtr tower, std::size_t k)
        : RankOracle(Kind::representable, tower->small_ptr(), tower->m() * k), tower_(std::move(tower)), k_(k)
    {
    }

    std::size_t rank(const Subspace& v) const override
    {
        check_argument(v);
        return rho(*tower_, v);
    }

    std::string describe() const override
    {
        return "F_{q^m}-rank on F_{q^m}^" + std::to_string(k_) + " over " + tower_->big().describe();
    }

private:
    TowerPtr tower_;
    std::size_t k_;
};

class DirectSumOracle final : public RankOracle {
public:
    DirectSumOracle(OraclePtr a, OraclePtr b)
        : RankOracle(Kind::direct_sum, a->field(), a->ground_dim() + b->ground_dim()), a_(std::move(a)),
          b_(std::move(b))
    {
    }

    std::size_t rank(const Subspace& v) const override
    {
        check_argument(v);
        if (auto hit = memo_.find(v))
            return *hit;
        const std::size_t n1 = a_->ground_dim(), n2 = b_->ground_dim();
        long best = static_cast<long>(v.dim());
        for (const auto& x : subspaces_within(v)) {
            const long value = static_cast<long>(a_->rank(x.project(0, n1))) +
                               static_cast<long>(b_->rank(x.project(n1, n2))) - static_cast<long>(x.dim());
            best = std::min(best, value);
        }
        const auto result = static_cast<std::size_t>(static_cast<long>(v.dim()) + best);
        memo_.store(v, result);
        return result;
    }

    std::string describe() const override { return "(" + a_->describe() + " + " + b_->describe() + ")"; }

private:
    OraclePtr a_;
    OraclePtr b_;
    mutable RankMemo memo_;
};

class PullbackOracle final : public RankOracle {
public:
    PullbackOracle(OraclePtr m, Mat psi)
        : RankOracle(Kind::pullback, m->field(), psi.rows()), m_(std::move(m)), psi_(std::move(psi))
    {
    }

    std::size_t rank(const Subspace& v) const override
    {
        check_argument(v);
        return m_->rank(v.image(psi_));
    }

    std::string describe() const override { return "pullback of " + m_->describe(); }

private:
    OraclePtr m_;
    Mat psi_;
};

class CustomOracle final : public RankOracle {
public:
    CustomOracle(FieldPtr fq, std::size_t n, std::function<std::size_t(const Subspace&)> fn, std::string name)
        : RankOracle(Kind::custom, std::move(fq), n), fn_(std::move(fn)), name_(std::move(name))
    {
    }

    std::size_t rank(const Subspace& v) const override
    {
        check_argument(v);
        return fn_(v);
    }

    std::string describe() const override { return name_; }

private:
    std::function<std::size_t(const Subspace&)> fn_;
    std::string name_;
};

std::vector<Subspace> lattice_of(const RankOracle& m, std::uint64_t budget)
{
    return all_subspaces(m.field(), m.ground_dim(), budget);
}

}  // namespace

OraclePtr uniform_oracle(FieldPtr fq, std::size_t k, std::size_t n)
{
    if (k > n)
        throw InvalidInput("uniform q-matroid needs k <= n (k = " + std::to_string(k) + ", n = " +
                           std::to_string(n) + ")");
    return std::make_shared<UniformOracle>(std::move(fq), k, n);
}

OraclePtr representable_oracle(TowerPtr tower, Mat g)
{
    if (!(g.field() == tower->big()))
        throw InvalidInput("generator matrix must have entries in F_{q^m}");
    if (rank(g) != g.rows())
        throw InvalidInput("generator matrix must have full row rank");
    return std::make_shared<RepresentableOracle>(std::move(tower), std::move(g));
}

OraclePtr span_rank_oracle(TowerPtr tower, std::size_t k)
{
    return std::make_shared<SpanRankOracle>(std::move(tower), k);
}

OraclePtr direct_sum_oracle(const std::vector<OraclePtr>& summands)
{
    if (summands.empty())
        throw InvalidInput("direct sum needs at least one summand");
    OraclePtr acc = summands.front();
    for (std::size_t i = 1; i < summands.size(); ++i) {
        if (!(*summands[i]->field() == *acc->field()))
            throw InvalidInput("direct sum summands must share the field F_q");
        acc = std::make_shared<DirectSumOracle>(acc, summands[i]);
    }
    return acc;
}

OraclePtr pullback_oracle(OraclePtr m, Mat psi)
{
    if (!(psi.field() == *m->field()))
        throw InvalidInput("pullback map must be over the oracle's field");
    if (psi.cols() != m->ground_dim())
        throw InvalidInput("pullback map must land in the oracle's ground space");
    if (rank(psi) != psi.rows())
        throw InvalidInput("pullback map is not injective");
    return std::make_shared<PullbackOracle>(std::move(m), std::move(psi));
}

OraclePtr custom_oracle(FieldPtr fq, std::size_t n, std::function<std::size_t(const Subspace&)> fn, std::string name)
{
    return std::make_shared<CustomOracle>(std::move(fq), n, std::move(fn), std::move(name));
}

namespace {

struct IndexedLattice {
    std::vector<Subspace> members;
    std::vector<std::size_t> ranks;
    std::unordered_map<Subspace, std::size_t, SubspaceHash> index;
};

IndexedLattice index_lattice(const RankOracle& m, std::uint64_t budget)
{
    IndexedLattice l;
    l.members = lattice_of(m, budget);
    l.ranks.reserve(l.members.size());
    for (std::size_t i = 0; i < l.members.size(); ++i) {
        l.ranks.push_back(m.rank(l.members[i]));
        l.index.emplace(l.members[i], i);
    }
    return l;
}

bool check_pair(const Subspace& a, std::size_t ra, const Subspace& b, std::size_t rb,
                const std::function<std::size_t(const Subspace&)>& rank_of, AxiomReport& report)
{
    if (ra > rb && b.contains(a)) {
        report.pass = false;
        report.axiom = "R2";
        report.a = a;
        report.b = b;
        report.detail = "A <= B but rank(A) = " + std::to_string(ra) + " > rank(B) = " + std::to_string(rb);
        return false;
    }
    const Subspace s = sum(a, b);
    const Subspace i = intersect(a, b);
    const std::size_t rs = rank_of(s), ri = rank_of(i);
    if (rs + ri > ra + rb) {
        report.pass = false;
        report.axiom = "R3";
        report.a = a;
        report.b = b;
        report.detail = "rank(A+B) + rank(A∩B) = " + std::to_string(rs + ri) + " > rank(A) + rank(B) = " +
                        std::to_string(ra + rb);
        return false;
    }
    return true;
}

bool check_single(const Subspace& a, std::size_t ra, AxiomReport& report)
{
    if (ra > a.dim()) {
        report.pass = false;
        report.axiom = "R1";
        report.a = a;
        report.detail = "rank " + std::to_string(ra) + " exceeds dimension " + std::to_string(a.dim());
        return false;
    }
    return true;
}

}  // namespace

AxiomReport check_axioms(const RankOracle& m, std::uint64_t budget)
{
    AxiomReport report;
    const IndexedLattice l = index_lattice(m, budget);
    const auto rank_of = [&](const Subspace& v) { return l.ranks[l.index.at(v)]; };
    for (std::size_t i = 0; i < l.members.size(); ++i) {
        ++report.subspaces_checked;
        if (!check_single(l.members[i], l.ranks[i], report))
            return report;
    }
    for (std::size_t i = 0; i < l.members.size(); ++i) {
        for (std::size_t j = 0; j < l.members.size(); ++j) {
            ++report.pairs_checked;
            if (!check_pair(l.members[i], l.ranks[i], l.members[j], l.ranks[j], rank_of, report))
                return report;
        }
    }
    return report;
}

AxiomReport check_axioms_sampled(const RankOracle& m, std::uint64_t seed, std::uint64_t pairs)
{
    AxiomReport report;
    report.exhaustive = false;
    std::mt19937_64 rng(seed);
    const std::size_t n = m.ground_dim();
    const auto rank_of = [&](const Subspace& v) { return m.rank(v); };
    for (std::uint64_t t = 0; t < pairs; ++t) {
        const Subspace a = random_subspace(m.field(), n, rng() % (n + 1), rng);
        Subspace b = random_subspace(m.field(), n, rng() % (n + 1), rng);
        // Every other pair is forced comparable so monotonicity gets exercised.
        if (t % 2 == 1)
            b = sum(a, b);
        const std::size_t ra = m.rank(a), rb = m.rank(b);
        report.subspaces_checked += 2;
        if (!check_single(a, ra, report) || !check_single(b, rb, report))
            return report;
        ++report.pairs_checked;
        if (!check_pair(a, ra, b, rb, rank_of, report))
            return report;
    }
    return report;
}

std::vector<std::size_t> flats_by_maximality(const std::vector<Subspace>& lattice,
                                             const std::vector<std::size_t>& ranks)
{
    std::vector<std::size_t> out;
    for (std::size_t a = 0; a < lattice.size(); ++a) {
        bool maximal = true;
        for (std::size_t b = 0; b < lattice.size() && maximal; ++b) {
            if (lattice[b].dim() > lattice[a].dim() && ranks[b] == ranks[a] && lattice[b].contains(lattice[a]))
                maximal = false;
        }
        if (maximal)
            out.push_back(a);
    }
    return out;
}

DerivedFamilies derived_families(const RankOracle& m, std::uint64_t budget)
{
    IndexedLattice l = index_lattice(m, budget);
    DerivedFamilies out;
    const std::size_t size = l.members.size();
    const auto& members = l.members;
    const auto& ranks = l.ranks;

    std::vector<bool> independent(size);
    for (std::size_t i = 0; i < size; ++i) {
        independent[i] = ranks[i] == members[i].dim();
        if (independent[i])
            out.independents.push_back(i);
    }

    // Circuits: dependent, and every proper subspace independent.
    for (std::size_t c = 0; c < size; ++c) {
        if (independent[c])
            continue;
        bool minimal = true;
        for (std::size_t x = 0; x < size && minimal; ++x) {
            if (members[x].dim() < members[c].dim() && !independent[x] && members[c].contains(members[x]))
                minimal = false;
        }
        if (minimal)
            out.circuits.push_back(c);
    }

    // Flats by the cover test.
    std::vector<std::size_t> points;
    for (std::size_t i = 0; i < size; ++i)
        if (members[i].dim() == 1)
            points.push_back(i);
    std::vector<bool> flat(size);
    for (std::size_t a = 0; a < size; ++a) {
        bool is_flat = true;
        for (auto x : points) {
            if (members[a].contains(members[x]))
                continue;
            if (ranks[l.index.at(sum(members[a], members[x]))] <= ranks[a]) {
                is_flat = false;
                break;
            }
        }
        flat[a] = is_flat;
        if (is_flat)
            out.flats.push_back(a);
    }
    if (flats_by_maximality(members, ranks) != out.flats)
        throw InvariantViolation("cover test and maximality reading of flats disagree for " + m.describe());

    // Open: equal to the sum of the circuits it contains.
    std::vector<bool> open(size);
    for (std::size_t v = 0; v < size; ++v) {
        Subspace acc = Subspace::zero(m.field(), m.ground_dim());
        for (auto c : out.circuits)
            if (members[v].contains(members[c]))
                acc = sum(acc, members[c]);
        open[v] = acc == members[v];
        if (open[v])
            out.opens.push_back(v);
    }

    for (std::size_t i = 0; i < size; ++i)
        if (flat[i] && open[i])
            out.cyclic_flats.push_back({members[i], ranks[i]});

    out.lattice = std::move(l.members);
    out.ranks = std::move(l.ranks);
    return out;
}

bool independence_via_cyclic_flats(const std::vector<CyclicFlatRecord>& cyclic_flats, const Subspace& i)
{
    for (const auto& z : cyclic_flats)
        if (weight(z.flat, i) > z.rank)
            return false;
    return true;
}

OracleComparison equal_oracles(const RankOracle& a, const RankOracle& b, std::uint64_t budget)
{
    if (a.ground_dim() != b.ground_dim() || !(*a.field() == *b.field()))
        throw InvalidInput("oracles have different ground spaces");
    OracleComparison out;
    for (const auto& v : lattice_of(a, budget)) {
        ++out.checked;
        const auto ra = a.rank(v), rb = b.rank(v);
        if (ra != rb) {
            out.equal = false;
            out.witness = v;
            out.rank_a = ra;
            out.rank_b = rb;
            return out;
        }
    }
    return out;
}

}  // namespace qmr
