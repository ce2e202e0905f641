#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "qmr/field.hpp"

namespace qmr {

using FieldPtr = std::shared_ptr<const Field>;

/// Dense row-major matrix over a single finite field.
class Mat {
public:
    Mat() = default;
    Mat(FieldPtr field, std::size_t rows, std::size_t cols)
        : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols)
    {
    }
    Mat(FieldPtr field, std::size_t rows, std::size_t cols, std::vector<Elt> data);

    static Mat identity(FieldPtr field, std::size_t n);
    static Mat from_rows(FieldPtr field, std::size_t cols, const std::vector<std::vector<Elt>>& rows);

    const Field& field() const { return *field_; }
    const FieldPtr& field_ptr() const { return field_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0; }

    Elt& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    Elt operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<Elt> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    std::span<const Elt> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
    std::vector<Elt> row_vector(std::size_t r) const { return {row(r).begin(), row(r).end()}; }

    std::vector<Elt>& data() { return data_; }
    const std::vector<Elt>& data() const { return data_; }

    void append_row(std::span<const Elt> values);
    /// Keeps the first n rows.
    void truncate_rows(std::size_t n);

    friend bool operator==(const Mat& a, const Mat& b);

private:
    FieldPtr field_;
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Elt> data_;
};

struct Echelon {
    Mat reduced;
    std::size_t rank = 0;
    std::vector<std::size_t> pivots;
};

/// In-place Gauss-Jordan elimination on a raw row-major buffer. Returns the
/// rank; nonzero rows end up on top. With reduced=false only forward
/// elimination is done (enough for rank).
std::size_t echelonize(const Field& field, std::span<Elt> data, std::size_t rows, std::size_t cols,
                       std::vector<std::size_t>* pivots = nullptr, bool reduced = true);

/// Reduced row echelon form: pivots strictly increasing, equal to one, and
/// the only nonzero entries of their columns. Zero rows are kept at the bottom.
Echelon rref(Mat m);
std::size_t rank(const Mat& m);

/// The nonzero rows of rref(m): the canonical basis of the row space.
Mat rowspace_basis(const Mat& m);

/// Rows form a basis of the right null space {v : m v^T = 0}.
Mat kernel_basis(const Mat& m);

/// Canonical basis of rowspace(a) ∩ rowspace(b) (Zassenhaus elimination).
Mat intersect_rowspaces(const Mat& a, const Mat& b);
/// Canonical basis of rowspace(a) + rowspace(b).
Mat sum_rowspaces(const Mat& a, const Mat& b);

Mat multiply(const Mat& a, const Mat& b);
Mat transpose(const Mat& a);
Mat vstack(const Mat& a, const Mat& b);
/// Throws InvalidInput when m is not square and invertible.
Mat inverse(const Mat& m);

/// A row vector x with x * m = y, if one exists.
std::optional<std::vector<Elt>> solve_left(const Mat& m, std::span<const Elt> y);

/// Throws InvalidInput unless both matrices live over equal fields.
void require_same_field(const Mat& a, const Mat& b);

}  // namespace qmr
