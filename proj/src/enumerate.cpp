#include "qmr/enumerate.hpp"

#include <algorithm>
#include <limits>

namespace qmr {

namespace {

constexpr std::uint64_t kIndexLimit = std::uint64_t{1} << 62;

}  // namespace

BigInt gaussian_binomial(std::uint64_t q, std::size_t n, std::size_t d)
{
    if (d > n)
        return 0;
    BigInt num = 1, den = 1;
    for (std::size_t i = 0; i < d; ++i) {
        num *= boost::multiprecision::pow(BigInt(q), static_cast<unsigned>(n - i)) - 1;
        den *= boost::multiprecision::pow(BigInt(q), static_cast<unsigned>(d - i)) - 1;
    }
    return num / den;
}

BigInt subspace_count(std::uint64_t q, std::size_t n)
{
    BigInt total = 0;
    for (std::size_t d = 0; d <= n; ++d)
        total += gaussian_binomial(q, n, d);
    return total;
}

std::string to_string(const BigInt& v)
{
    return v.str();
}

void require_budget(const BigInt& workload, std::uint64_t budget, const std::string& what)
{
    if (workload > budget)
        throw BudgetExceeded(what + " exceeds the budget of " + std::to_string(budget), to_string(workload));
}

SubspaceEnumerator::SubspaceEnumerator(FieldPtr field, std::size_t n, std::size_t d)
    : field_(std::move(field)), n_(n), d_(d), q_(field_->order()), count_(gaussian_binomial(field_->order(), n, d))
{
    if (d > n)
        throw InvalidInput("subspace dimension " + std::to_string(d) + " exceeds ambient dimension " +
                           std::to_string(n));
    seek(0);
}

std::uint64_t SubspaceEnumerator::size() const
{
    if (count_ > kIndexLimit)
        throw BudgetExceeded("subspace enumeration does not fit a machine index", to_string(count_));
    return static_cast<std::uint64_t>(count_);
}

std::uint64_t SubspaceEnumerator::cell_size(const std::vector<std::size_t>& pivots) const
{
    // Row i has free entries in the non-pivot columns right of its pivot.
    std::size_t free = 0;
    for (std::size_t i = 0; i < d_; ++i)
        free += (n_ - pivots[i] - 1) - (d_ - i - 1);
    std::uint64_t size = 1;
    for (std::size_t k = 0; k < free; ++k) {
        if (size > kIndexLimit / q_)
            return kIndexLimit;
        size *= q_;
    }
    return size;
}

bool SubspaceEnumerator::next_pivots(std::vector<std::size_t>& pivots) const
{
    for (std::size_t i = d_; i-- > 0;) {
        if (pivots[i] < n_ - d_ + i) {
            ++pivots[i];
            for (std::size_t j = i + 1; j < d_; ++j)
                pivots[j] = pivots[j - 1] + 1;
            return true;
        }
    }
    return false;
}

void SubspaceEnumerator::load_cell()
{
    free_.clear();
    std::vector<bool> is_pivot(n_, false);
    for (auto c : pivots_)
        is_pivot[c] = true;
    for (std::size_t i = 0; i < d_; ++i)
        for (std::size_t c = pivots_[i] + 1; c < n_; ++c)
            if (!is_pivot[c])
                free_.emplace_back(i, c);
    digits_.assign(free_.size(), 0);
}

void SubspaceEnumerator::rebuild()
{
    current_ = Mat(field_, d_, n_);
    for (std::size_t i = 0; i < d_; ++i)
        current_(i, pivots_[i]) = field_->one();
    for (std::size_t k = 0; k < free_.size(); ++k)
        current_(free_[k].first, free_[k].second) = Elt{digits_[k]};
}

void SubspaceEnumerator::seek(std::uint64_t index)
{
    if (count_ > kIndexLimit)
        throw BudgetExceeded("subspace enumeration does not fit a machine index", to_string(count_));
    index_ = index;
    valid_ = index < static_cast<std::uint64_t>(count_);
    if (!valid_)
        return;
    pivots_.resize(d_);
    for (std::size_t i = 0; i < d_; ++i)
        pivots_[i] = i;
    std::uint64_t rest = index;
    while (true) {
        const auto size = cell_size(pivots_);
        if (rest < size)
            break;
        rest -= size;
        if (!next_pivots(pivots_))
            throw InvariantViolation("subspace index beyond the Gaussian binomial");
    }
    load_cell();
    for (std::size_t k = free_.size(); k-- > 0;) {
        digits_[k] = rest % q_;
        rest /= q_;
    }
    rebuild();
}

void SubspaceEnumerator::advance()
{
    if (!valid_)
        return;
    ++index_;
    for (std::size_t k = free_.size(); k-- > 0;) {
        if (++digits_[k] < q_) {
            current_(free_[k].first, free_[k].second) = Elt{digits_[k]};
            return;
        }
        digits_[k] = 0;
        current_(free_[k].first, free_[k].second) = Elt{};
    }
    if (!next_pivots(pivots_)) {
        valid_ = false;
        return;
    }
    load_cell();
    rebuild();
}

Mat SubspaceEnumerator::at(std::uint64_t index) const
{
    SubspaceEnumerator copy = *this;
    copy.seek(index);
    if (!copy.valid())
        throw InvalidInput("subspace index " + std::to_string(index) + " out of range");
    return copy.current_;
}

std::uint64_t SubspaceEnumerator::index_of(const Mat& rref) const
{
    if (rref.rows() != d_ || rref.cols() != n_)
        throw InvalidInput("basis has the wrong shape for this enumeration");
    std::vector<std::size_t> target(d_);
    for (std::size_t i = 0; i < d_; ++i) {
        std::size_t c = 0;
        while (c < n_ && rref(i, c).is_zero())
            ++c;
        if (c == n_ || rref(i, c) != field_->one() || (i > 0 && c <= target[i - 1]))
            throw InvalidInput("matrix is not in reduced echelon form");
        target[i] = c;
    }
    for (std::size_t i = 0; i < d_; ++i)
        for (std::size_t r = 0; r < d_; ++r)
            if (r != i && !rref(r, target[i]).is_zero())
                throw InvalidInput("matrix is not in reduced echelon form");

    std::vector<std::size_t> pivots(d_);
    for (std::size_t i = 0; i < d_; ++i)
        pivots[i] = i;
    std::uint64_t offset = 0;
    while (pivots != target) {
        offset += cell_size(pivots);
        if (!next_pivots(pivots))
            throw InvariantViolation("pivot set not reached");
    }
    std::vector<bool> is_pivot(n_, false);
    for (auto c : target)
        is_pivot[c] = true;
    std::uint64_t within = 0;
    for (std::size_t i = 0; i < d_; ++i) {
        for (std::size_t c = target[i] + 1; c < n_; ++c) {
            if (is_pivot[c])
                continue;
            within = within * q_ + rref(i, c).code;
        }
    }
    return offset + within;
}

std::vector<Subspace> subspaces_of_dim(FieldPtr field, std::size_t n, std::size_t d, std::uint64_t budget)
{
    SubspaceEnumerator it(std::move(field), n, d);
    require_budget(it.count(), budget, "listing subspaces");
    std::vector<Subspace> out;
    out.reserve(it.size());
    for (; it.valid(); it.advance())
        out.push_back(it.current_subspace());
    return out;
}

std::vector<Subspace> all_subspaces(FieldPtr field, std::size_t n, std::uint64_t budget)
{
    require_budget(subspace_count(field->order(), n), budget, "listing all subspaces");
    std::vector<Subspace> out;
    for (std::size_t d = 0; d <= n; ++d) {
        auto part = subspaces_of_dim(field, n, d, budget);
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

std::vector<Subspace> subspaces_within(const Subspace& v, std::uint64_t budget)
{
    const auto coords = all_subspaces(v.field_ptr(), v.dim(), budget);
    std::vector<Subspace> out;
    out.reserve(coords.size());
    for (const auto& c : coords) {
        if (c.dim() == 0)
            out.push_back(Subspace::zero(v.field_ptr(), v.ambient()));
        else
            out.push_back(Subspace::span(multiply(c.basis(), v.basis())));
    }
    return out;
}

Mat random_full_rank(FieldPtr field, std::size_t d, std::size_t n, std::mt19937_64& rng)
{
    if (d > n)
        throw InvalidInput("cannot draw " + std::to_string(d) + " independent vectors in dimension " +
                           std::to_string(n));
    const Code q = field->order();
    Mat m(field, d, n);
    do {
        for (auto& e : m.data())
            e = Elt{rng() % q};
    } while (rank(m) < d);
    return m;
}

Subspace random_subspace(FieldPtr field, std::size_t n, std::size_t d, std::mt19937_64& rng)
{
    return Subspace::span(random_full_rank(std::move(field), d, n, rng));
}

}  // namespace qmr
