#include "qmr/linalg.hpp"

#include <algorithm>

namespace qmr {

Mat::Mat(FieldPtr field, std::size_t rows, std::size_t cols, std::vector<Elt> data)
    : field_(std::move(field)), rows_(rows), cols_(cols), data_(std::move(data))
{
    if (data_.size() != rows_ * cols_)
        throw InvalidInput("matrix data size does not match its shape");
}

Mat Mat::identity(FieldPtr field, std::size_t n)
{
    Mat m(std::move(field), n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = Elt{1};
    return m;
}

Mat Mat::from_rows(FieldPtr field, std::size_t cols, const std::vector<std::vector<Elt>>& rows)
{
    Mat m(std::move(field), 0, cols);
    for (const auto& r : rows)
        m.append_row(r);
    return m;
}

void Mat::append_row(std::span<const Elt> values)
{
    if (values.size() != cols_)
        throw InvalidInput("row length does not match matrix width");
    data_.insert(data_.end(), values.begin(), values.end());
    ++rows_;
}

void Mat::truncate_rows(std::size_t n)
{
    if (n < rows_) {
        rows_ = n;
        data_.resize(rows_ * cols_);
    }
}

bool operator==(const Mat& a, const Mat& b)
{
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_ || a.data_ != b.data_)
        return false;
    if (a.field_ == b.field_)
        return true;
    return a.field_ && b.field_ && *a.field_ == *b.field_;
}

void require_same_field(const Mat& a, const Mat& b)
{
    if (a.field_ptr() == b.field_ptr())
        return;
    if (!a.field_ptr() || !b.field_ptr() || !(a.field() == b.field()))
        throw InvalidInput("matrices are defined over different fields");
}

std::size_t echelonize(const Field& field, std::span<Elt> data, std::size_t rows, std::size_t cols,
                       std::vector<std::size_t>* pivots, bool reduced)
{
    if (pivots)
        pivots->clear();
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t sel = rows;
        for (std::size_t r = rank; r < rows; ++r) {
            if (!data[r * cols + c].is_zero()) {
                sel = r;
                break;
            }
        }
        if (sel == rows)
            continue;
        if (sel != rank)
            std::swap_ranges(data.begin() + sel * cols, data.begin() + (sel + 1) * cols,
                             data.begin() + rank * cols);
        std::span<Elt> prow = data.subspan(rank * cols, cols);
        const Elt lead = prow[c];
        if (lead.code != 1)
            field.scale(prow.subspan(c), field.inv(lead));
        const std::size_t first = reduced ? 0 : rank + 1;
        for (std::size_t r = first; r < rows; ++r) {
            if (r == rank)
                continue;
            const Elt f = data[r * cols + c];
            if (f.is_zero())
                continue;
            field.axpy(data.subspan(r * cols + c, cols - c), field.neg(f), prow.subspan(c));
        }
        if (pivots)
            pivots->push_back(c);
        ++rank;
    }
    return rank;
}

Echelon rref(Mat m)
{
    Echelon out;
    out.rank = echelonize(m.field(), m.data(), m.rows(), m.cols(), &out.pivots, true);
    out.reduced = std::move(m);
    return out;
}

std::size_t rank(const Mat& m)
{
    std::vector<Elt> buf = m.data();
    return echelonize(m.field(), buf, m.rows(), m.cols(), nullptr, false);
}

Mat rowspace_basis(const Mat& m)
{
    Echelon e = rref(m);
    e.reduced.truncate_rows(e.rank);
    return std::move(e.reduced);
}

Mat kernel_basis(const Mat& m)
{
    Echelon e = rref(m);
    const std::size_t n = m.cols();
    std::vector<bool> is_pivot(n, false);
    for (auto c : e.pivots)
        is_pivot[c] = true;
    const Field& f = m.field();
    Mat k(m.field_ptr(), 0, n);
    std::vector<Elt> v(n);
    for (std::size_t free = 0; free < n; ++free) {
        if (is_pivot[free])
            continue;
        std::fill(v.begin(), v.end(), Elt{});
        v[free] = f.one();
        for (std::size_t i = 0; i < e.rank; ++i)
            v[e.pivots[i]] = f.neg(e.reduced(i, free));
        k.append_row(v);
    }
    return k;
}

Mat vstack(const Mat& a, const Mat& b)
{
    require_same_field(a, b);
    if (a.cols() != b.cols())
        throw InvalidInput("cannot stack matrices of different widths");
    std::vector<Elt> data = a.data();
    data.insert(data.end(), b.data().begin(), b.data().end());
    return Mat(a.field_ptr(), a.rows() + b.rows(), a.cols(), std::move(data));
}

Mat sum_rowspaces(const Mat& a, const Mat& b)
{
    return rowspace_basis(vstack(a, b));
}

Mat intersect_rowspaces(const Mat& a, const Mat& b)
{
    require_same_field(a, b);
    if (a.cols() != b.cols())
        throw InvalidInput("row spaces live in ambient spaces of different dimension");
    const std::size_t n = a.cols();
    Mat z(a.field_ptr(), a.rows() + b.rows(), 2 * n);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < n; ++j) {
            z(i, j) = a(i, j);
            z(i, n + j) = a(i, j);
        }
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < n; ++j)
            z(a.rows() + i, j) = b(i, j);
    Echelon e = rref(std::move(z));
    // Rows whose left half vanishes carry the intersection in their right half.
    Mat out(a.field_ptr(), 0, n);
    for (std::size_t i = 0; i < e.rank; ++i) {
        if (e.pivots[i] >= n)
            out.append_row(e.reduced.row(i).subspan(n, n));
    }
    return rowspace_basis(out);
}

Mat multiply(const Mat& a, const Mat& b)
{
    require_same_field(a, b);
    if (a.cols() != b.rows())
        throw InvalidInput("matrix product shape mismatch");
    const Field& f = a.field();
    Mat out(a.field_ptr(), a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k)
            f.axpy(out.row(i), a(i, k), b.row(k));
    return out;
}

Mat transpose(const Mat& a)
{
    Mat out(a.field_ptr(), a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            out(j, i) = a(i, j);
    return out;
}

Mat inverse(const Mat& m)
{
    if (m.rows() != m.cols())
        throw InvalidInput("only square matrices can be inverted");
    const std::size_t n = m.rows();
    Mat aug(m.field_ptr(), n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            aug(i, j) = m(i, j);
        aug(i, n + i) = Elt{1};
    }
    Echelon e = rref(std::move(aug));
    if (e.rank < n || (n > 0 && e.pivots[n - 1] != n - 1))
        throw InvalidInput("matrix is singular");
    Mat out(m.field_ptr(), n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            out(i, j) = e.reduced(i, n + j);
    return out;
}

std::optional<std::vector<Elt>> solve_left(const Mat& m, std::span<const Elt> y)
{
    if (y.size() != m.cols())
        throw InvalidInput("right-hand side length does not match matrix width");
    // x m = y  <=>  m^T x^T = y^T; eliminate [m^T | y^T].
    const std::size_t r = m.rows(), c = m.cols();
    Mat aug(m.field_ptr(), c, r + 1);
    for (std::size_t i = 0; i < c; ++i) {
        for (std::size_t j = 0; j < r; ++j)
            aug(i, j) = m(j, i);
        aug(i, r) = y[i];
    }
    Echelon e = rref(std::move(aug));
    if (e.rank > 0 && e.pivots[e.rank - 1] == r)
        return std::nullopt;
    std::vector<Elt> x(r);
    for (std::size_t i = 0; i < e.rank; ++i)
        x[e.pivots[i]] = e.reduced(i, r);
    return x;
}

}  // namespace qmr
