#include "qmr/evasive.hpp"

#include <algorithm>
#include <limits>
#include <random>
#include <unordered_map>

#include "qmr/errors.hpp"
#include "parallel.hpp"

namespace qmr {

std::string to_string(FamilyDescriptor::Kind kind)
{
    switch (kind) {
    case FamilyDescriptor::Kind::lambda:
        return "lambda";
    case FamilyDescriptor::Kind::lambda_k:
        return "lambda_k";
    case FamilyDescriptor::Kind::sidon:
        return "sidon";
    case FamilyDescriptor::Kind::explicit_list:
        return "explicit";
    }
    return "unknown";
}

namespace {

using detail::run_partitioned;

constexpr std::uint64_t kNoIndex = std::numeric_limits<std::uint64_t>::max();

struct Partial {
    std::uint64_t scanned = 0;
    std::size_t max_weight = 0;
    std::uint64_t witness_index = kNoIndex;
    std::size_t witness_weight = 0;
    Mat witness_annihilator;
};

void merge(EvasiveReport& report, const std::vector<Partial>& parts)
{
    const Partial* best = nullptr;
    for (const auto& p : parts) {
        report.scanned += p.scanned;
        report.max_weight_seen = std::max(report.max_weight_seen, p.max_weight);
        if (p.witness_index != kNoIndex && (!best || p.witness_index < best->witness_index))
            best = &p;
    }
    report.verdict = best == nullptr;
    if (best) {
        EvasiveWitness w;
        w.index = best->witness_index;
        w.weight = best->witness_weight;
        w.annihilator = best->witness_annihilator;
        report.witness = std::move(w);
    }
}

}  // namespace

// ---- LambdaFamily -------------------------------------------------------------

LambdaFamily::LambdaFamily(TowerPtr tower, std::size_t k, std::size_t h, std::vector<std::size_t> kvec)
    : tower_(std::move(tower)), k_(k), h_(h), kvec_(std::move(kvec)),
      walker_(tower_->big_ptr(), k, h <= k ? k - h : 0)
{
    if (h < 1 || h > k)
        throw InvalidInput("Λ_h needs 1 <= h <= k, got h = " + std::to_string(h) + ", k = " + std::to_string(k));
    if (!kvec_.empty()) {
        std::size_t total = 0;
        for (auto ki : kvec_) {
            if (ki == 0)
                throw InvalidInput("block sizes k_i must be positive");
            total += ki;
        }
        if (total != k)
            throw InvalidInput("block sizes must sum to k = " + std::to_string(k));
        if (h > k - 1)
            throw InvalidInput("Λ_{h,k} needs h <= k - 1");
    }
}

FamilyDescriptor LambdaFamily::descriptor() const
{
    FamilyDescriptor d;
    d.kind = kvec_.empty() ? FamilyDescriptor::Kind::lambda : FamilyDescriptor::Kind::lambda_k;
    d.k = k_;
    d.h = h_;
    d.kvec = kvec_;
    return d;
}

BigInt LambdaFamily::member_count() const
{
    if (kvec_.empty())
        return raw_count();
    const std::uint64_t big_q = tower_->big().order();
    const std::size_t t = kvec_.size();
    BigInt total = 0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << t); ++mask) {
        std::size_t kj = 0;
        int sign = 1;
        for (std::size_t i = 0; i < t; ++i) {
            if (mask >> i & 1) {
                kj += kvec_[i];
                sign = -sign;
            }
        }
        if (kj > h_)
            continue;
        const BigInt c = gaussian_binomial(big_q, k_ - kj, h_ - kj);
        total += sign > 0 ? c : BigInt(-c);
    }
    return total;
}

bool LambdaFamily::admissible(const Mat& w) const
{
    std::size_t offset = 0;
    for (auto ki : kvec_) {
        bool vanishes = true;
        for (std::size_t r = 0; r < w.rows() && vanishes; ++r)
            for (std::size_t c = offset; c < offset + ki; ++c)
                if (!w(r, c).is_zero()) {
                    vanishes = false;
                    break;
                }
        if (vanishes)
            return false;
        offset += ki;
    }
    return true;
}

Subspace LambdaFamily::member(const Mat& w) const
{
    if (w.rows() == 0)
        return Subspace::full(tower_->small_ptr(), tower_->m() * k_);
    return annihilated_subspace(*tower_, w);
}

std::vector<Subspace> LambdaFamily::members(std::uint64_t budget) const
{
    require_budget(raw_count(), budget, "listing Λ members");
    std::vector<Subspace> out;
    for (auto it = walker(); it.valid(); it.advance())
        if (admissible(it.current()))
            out.push_back(member(it.current()));
    return out;
}

LambdaFamily lambda_family(TowerPtr tower, std::size_t k, std::size_t h)
{
    return LambdaFamily(std::move(tower), k, h);
}

LambdaFamily lambda_hk_family(TowerPtr tower, const std::vector<std::size_t>& kvec, std::size_t h)
{
    if (kvec.empty())
        throw InvalidInput("Λ_{h,k} needs at least one block");
    std::size_t k = 0;
    for (auto ki : kvec)
        k += ki;
    return LambdaFamily(std::move(tower), k, h, kvec);
}

// ---- weights ------------------------------------------------------------------

WeightEvaluator::WeightEvaluator(const QSystem& s)
    : tower_(s.tower), k_(s.k), basis_(contracted_basis(*s.tower, s.space))
{
}

std::size_t WeightEvaluator::operator()(const Mat& w) const
{
    const std::size_t n = basis_.rows();
    const std::size_t c = w.rows();
    if (c == 0)
        return n;
    const Field& big = tower_->big();
    const std::size_t m = tower_->m();
    Mat images(tower_->small_ptr(), n, m * c);
    for (std::size_t i = 0; i < n; ++i) {
        auto out = images.row(i);
        for (std::size_t r = 0; r < c; ++r) {
            Elt y{};
            for (std::size_t j = 0; j < k_; ++j)
                y = big.add(y, big.mul(w(r, j), basis_(i, j)));
            tower_->expand_into(y, out.subspan(r * m, m));
        }
    }
    return n - rank(images);
}

// ---- scans --------------------------------------------------------------------

EvasiveReport is_evasive(const QSystem& s, const LambdaFamily& family, std::size_t bound, const ScanOptions& opts)
{
    if (s.k != family.k())
        throw InvalidInput("family and system live in different ambient spaces");
    require_budget(family.raw_count(), opts.budget, "evasiveness scan");
    const std::uint64_t total = family.walker().size();
    const WeightEvaluator eval(s);

    const unsigned workers = std::max(1u, opts.workers);
    std::vector<Partial> parts(workers);
    run_partitioned(workers, total, [&](std::uint64_t begin, std::uint64_t end, unsigned slot) {
        Partial& p = parts[slot];
        auto it = family.walker();
        it.seek(begin);
        for (; it.valid() && it.index() < end; it.advance()) {
            if (!family.admissible(it.current()))
                continue;
            ++p.scanned;
            const std::size_t w = eval(it.current());
            p.max_weight = std::max(p.max_weight, w);
            if (w > bound && p.witness_index == kNoIndex) {
                p.witness_index = it.index();
                p.witness_weight = w;
                p.witness_annihilator = it.current();
                if (opts.stop_on_witness)
                    break;
            }
        }
    });

    EvasiveReport report;
    report.family = family.descriptor();
    report.bound = bound;
    merge(report, parts);
    if (report.witness)
        report.witness->member = family.member(report.witness->annihilator);
    report.exhaustive = report.scanned == family.member_count();
    return report;
}

EvasiveReport is_evasive(const QSystem& s, const std::vector<Subspace>& family, std::size_t bound)
{
    EvasiveReport report;
    report.family.kind = FamilyDescriptor::Kind::explicit_list;
    report.family.k = s.k;
    report.bound = bound;
    for (std::size_t i = 0; i < family.size(); ++i) {
        require_same_ambient(s.space, family[i]);
        ++report.scanned;
        const std::size_t w = weight(s.space, family[i]);
        report.max_weight_seen = std::max(report.max_weight_seen, w);
        if (w > bound && !report.witness) {
            EvasiveWitness wit;
            wit.index = i;
            wit.weight = w;
            wit.member = family[i];
            report.witness = std::move(wit);
        }
    }
    report.verdict = !report.witness;
    return report;
}

EvasiveReport is_evasive_sampled(const QSystem& s, const LambdaFamily& family, std::size_t bound,
                                 std::uint64_t seed, std::uint64_t samples)
{
    if (s.k != family.k())
        throw InvalidInput("family and system live in different ambient spaces");
    const WeightEvaluator eval(s);
    const std::size_t c = family.k() - family.h();
    const bool indexable = family.raw_count() <= (std::uint64_t{1} << 62);
    std::mt19937_64 rng(seed);

    EvasiveReport report;
    report.family = family.descriptor();
    report.bound = bound;
    report.exhaustive = false;
    report.method = "sampled";
    for (std::uint64_t t = 0; t < samples; ++t) {
        Mat w;
        std::size_t rejected = 0;
        do {
            if (++rejected > 10000)
                throw InvariantViolation("sampling found no admissible member in 10000 draws");
            w = c == 0 ? Mat(family.tower().big_ptr(), 0, family.k())
                       : rref(random_full_rank(family.tower().big_ptr(), c, family.k(), rng)).reduced;
            w.truncate_rows(c);
        } while (!family.admissible(w));
        ++report.scanned;
        const std::size_t wt = eval(w);
        report.max_weight_seen = std::max(report.max_weight_seen, wt);
        if (wt > bound && !report.witness) {
            EvasiveWitness wit;
            wit.index = indexable ? family.index_of(w) : kNoIndex;
            wit.weight = wt;
            wit.annihilator = w;
            wit.member = family.member(w);
            report.witness = std::move(wit);
        }
    }
    report.verdict = !report.witness;
    return report;
}

EvasiveReport is_hr_evasive(const QSystem& s, std::size_t h, std::size_t r, const ScanOptions& opts)
{
    return is_evasive(s, lambda_family(s.tower, s.k, h), r, opts);
}

EvasiveReport is_h_scattered(const QSystem& s, std::size_t h, const ScanOptions& opts)
{
    return is_hr_evasive(s, h, h, opts);
}

// ---- rank-one pairs -------------------------------------------------------------

namespace {

void check_pair_input(const FieldTower& tower, const Subspace& a, const Subspace& b)
{
    for (const Subspace* x : {&a, &b}) {
        if (!(x->field() == tower.small()) || x->ambient() != tower.m())
            throw InvalidInput("pair members must be F_q-subspaces of F_{q^m}, given in F_q^m");
        if (x->dim() == 0)
            throw InvalidInput("pair members must be nonzero");
    }
}

std::vector<Elt> contracted_elements(const FieldTower& tower, const Subspace& s)
{
    std::vector<Elt> out;
    for (const auto& v : s.elements()) {
        const Elt x = tower.contract(v);
        if (!x.is_zero())
            out.push_back(x);
    }
    return out;
}

/// Position of the class λ F_q^* among projective points of F_q^m.
std::uint64_t class_index(const FieldTower& tower, const SubspaceEnumerator& points, Elt lambda)
{
    auto coords = tower.expand(lambda);
    const Field& fq = tower.small();
    std::size_t lead = 0;
    while (coords[lead].is_zero())
        ++lead;
    const Elt inv = fq.inv(coords[lead]);
    for (auto& c : coords)
        c = fq.mul(c, inv);
    return points.index_of(Mat(tower.small_ptr(), 1, tower.m(), std::move(coords)));
}

Mat pair_annihilator(const FieldTower& tower, Elt lambda)
{
    Mat w(tower.big_ptr(), 1, 2);
    w(0, 0) = tower.big().one();
    w(0, 1) = tower.big().neg(lambda);
    return w;
}

}  // namespace

QSystem pair_system(TowerPtr tower, const Subspace& a, const Subspace& b)
{
    check_pair_input(*tower, a, b);
    const std::size_t m = tower->m();
    Subspace s = sum(a.embed(2 * m, 0), b.embed(2 * m, m));
    return make_system(std::move(tower), 2, std::move(s));
}

EvasiveReport sidon_pair_check(const FieldTower& tower, const Subspace& a, const Subspace& b, SidonMethod method,
                               unsigned workers)
{
    check_pair_input(tower, a, b);
    const Field& big = tower.big();
    const std::uint64_t q = tower.q();
    const std::size_t m = tower.m();
    const SubspaceEnumerator points(tower.small_ptr(), m, 1);
    const std::uint64_t classes = points.size();

    if (method == SidonMethod::automatic) {
        // Ratio counting touches |A||B| products; the scan does one small
        // elimination per class.
        const BigInt products = boost::multiprecision::pow(BigInt(q), static_cast<unsigned>(a.dim() + b.dim()));
        method = products <= BigInt(classes) * (a.dim() + b.dim()) * m ? SidonMethod::ratio : SidonMethod::lambda_scan;
    }

    EvasiveReport report;
    report.family.kind = FamilyDescriptor::Kind::sidon;
    report.family.k = 2;
    report.family.h = 1;
    report.family.kvec = {1, 1};
    report.bound = 1;
    report.scanned = classes;

    std::uint64_t fail_index = kNoIndex;
    std::size_t fail_weight = 0;

    if (method == SidonMethod::ratio) {
        report.method = "ratio";
        const auto as = contracted_elements(tower, a);
        std::vector<Elt> binv;
        for (Elt x : contracted_elements(tower, b))
            binv.push_back(big.inv(x));
        std::unordered_map<Code, std::uint64_t> counts;
        counts.reserve(as.size() * binv.size());
        for (Elt x : as)
            for (Elt y : binv)
                ++counts[big.mul(x, y).code];
        for (const auto& [code, count] : counts) {
            std::size_t d = 0;
            std::uint64_t size = 1;
            while (size - 1 < count) {
                size *= q;
                ++d;
            }
            if (size - 1 != count)
                throw InvariantViolation("ratio multiplicity is not of the form q^d - 1");
            report.max_weight_seen = std::max(report.max_weight_seen, d);
            if (d > 1) {
                const std::uint64_t idx = class_index(tower, points, Elt{code});
                if (idx < fail_index) {
                    fail_index = idx;
                    fail_weight = d;
                }
            }
        }
    } else {
        report.method = "lambda-scan";
        std::vector<Elt> bbasis;
        for (std::size_t i = 0; i < b.dim(); ++i)
            bbasis.push_back(tower.contract(b.basis_row(i)));
        const std::size_t rows = a.dim() + b.dim();

        struct Part {
            std::size_t max_weight = 0;
            std::uint64_t index = kNoIndex;
            std::size_t weight = 0;
        };
        const unsigned nw = std::max(1u, workers);
        std::vector<Part> parts(nw);
        run_partitioned(nw, classes, [&](std::uint64_t begin, std::uint64_t end, unsigned slot) {
            Part& p = parts[slot];
            SubspaceEnumerator it = points;
            it.seek(begin);
            Mat stack(tower.small_ptr(), rows, m);
            for (; it.valid() && it.index() < end; it.advance()) {
                const Elt lambda = tower.contract(it.current().row(0));
                for (std::size_t i = 0; i < a.dim(); ++i)
                    std::copy(a.basis_row(i).begin(), a.basis_row(i).end(), stack.row(i).begin());
                for (std::size_t i = 0; i < b.dim(); ++i)
                    tower.expand_into(big.mul(lambda, bbasis[i]), stack.row(a.dim() + i));
                const std::size_t d = rows - rank(stack);
                p.max_weight = std::max(p.max_weight, d);
                if (d > 1 && p.index == kNoIndex) {
                    p.index = it.index();
                    p.weight = d;
                }
            }
        });
        for (const auto& p : parts) {
            report.max_weight_seen = std::max(report.max_weight_seen, p.max_weight);
            if (p.index < fail_index) {
                fail_index = p.index;
                fail_weight = p.weight;
            }
        }
    }

    report.verdict = fail_index == kNoIndex;
    if (!report.verdict) {
        // Report the class representative itself, so both methods agree.
        const Elt lambda = tower.contract(points.at(fail_index).row(0));
        EvasiveWitness w;
        w.index = fail_index;
        w.weight = fail_weight;
        w.annihilator = pair_annihilator(tower, lambda);
        w.member = annihilated_subspace(tower, w.annihilator);
        report.witness = std::move(w);
    }
    return report;
}

// ---- cascade --------------------------------------------------------------------

CascadeReport cascade_check(const QSystem& s, const std::vector<std::size_t>& kvec, std::size_t r,
                            const ScanOptions& opts)
{
    CascadeReport out;
    for (std::size_t l = 1; l + 1 <= s.k; ++l) {
        const auto family = lambda_hk_family(s.tower, kvec, l);
        if (r + 1 + l < s.k) {
            EvasiveReport rep;
            rep.family = family.descriptor();
            rep.verdict = family.member_count() == 0;
            rep.exhaustive = false;
            rep.method = "negative-bound";
            out.levels.push_back(std::move(rep));
        } else {
            out.levels.push_back(is_evasive(s, family, r + 1 + l - s.k, opts));
        }
        if (!out.levels.back().verdict && !out.failing_level) {
            out.holds = false;
            out.failing_level = l;
        }
    }
    return out;
}

}  // namespace qmr
