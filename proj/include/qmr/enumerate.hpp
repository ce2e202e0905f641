#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "qmr/linalg.hpp"
#include "qmr/subspace.hpp"

namespace qmr {

using BigInt = boost::multiprecision::cpp_int;

/// Number of d-dimensional subspaces of F_q^n.
BigInt gaussian_binomial(std::uint64_t q, std::size_t n, std::size_t d);
/// Total number of subspaces of F_q^n.
BigInt subspace_count(std::uint64_t q, std::size_t n);
std::string to_string(const BigInt& v);

/// Throws BudgetExceeded when workload > budget.
void require_budget(const BigInt& workload, std::uint64_t budget, const std::string& what);

/// Streams every d-dimensional subspace of F^n exactly once, each as its
/// d x n reduced echelon basis.
///
/// Order: pivot sets lexicographically (as increasing column tuples), then
/// within a pivot set the free entries row by row, left to right, read as a
/// base-|F| numeral with the first free entry most significant. Indices are
/// positions in this order, so disjoint index ranges can go to different
/// workers via seek().
class SubspaceEnumerator {
public:
    SubspaceEnumerator(FieldPtr field, std::size_t n, std::size_t d);

    const BigInt& count() const { return count_; }
    /// count() as a machine integer; throws BudgetExceeded above 2^62.
    std::uint64_t size() const;

    void seek(std::uint64_t index);
    void skip(std::uint64_t k) { seek(index_ + k); }
    void advance();
    bool valid() const { return valid_; }
    std::uint64_t index() const { return index_; }
    const Mat& current() const { return current_; }
    Subspace current_subspace() const { return Subspace::from_canonical(current_); }

    Mat at(std::uint64_t index) const;
    /// Position of a canonical d x n basis. Throws InvalidInput if the matrix
    /// is not a reduced echelon basis of the right shape.
    std::uint64_t index_of(const Mat& rref) const;

    std::size_t n() const { return n_; }
    std::size_t d() const { return d_; }

private:
    std::uint64_t cell_size(const std::vector<std::size_t>& pivots) const;
    void load_cell();
    void rebuild();
    bool next_pivots(std::vector<std::size_t>& pivots) const;

    FieldPtr field_;
    std::size_t n_;
    std::size_t d_;
    Code q_;
    BigInt count_;

    bool valid_ = false;
    std::uint64_t index_ = 0;
    std::vector<std::size_t> pivots_;
    std::vector<std::pair<std::size_t, std::size_t>> free_;  // (row, col), row-major
    std::vector<Code> digits_;                              // one per free entry
    Mat current_;
};

/// Every subspace of F^n: dimension ascending, each dimension in enumerator
/// order. Refuses when the total exceeds budget.
std::vector<Subspace> all_subspaces(FieldPtr field, std::size_t n, std::uint64_t budget = 1u << 20);
/// The d-dimensional ones only.
std::vector<Subspace> subspaces_of_dim(FieldPtr field, std::size_t n, std::size_t d,
                                       std::uint64_t budget = 1u << 20);
/// Every subspace contained in v (ordered as all_subspaces of F^dim v, mapped in).
std::vector<Subspace> subspaces_within(const Subspace& v, std::uint64_t budget = 1u << 20);

/// A uniformly random d x n matrix over F, redrawn until it has rank d.
/// Entries are rng() % |F|.
Mat random_full_rank(FieldPtr field, std::size_t d, std::size_t n, std::mt19937_64& rng);
Subspace random_subspace(FieldPtr field, std::size_t n, std::size_t d, std::mt19937_64& rng);

}  // namespace qmr
