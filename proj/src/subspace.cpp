#include "qmr/subspace.hpp"

#include <algorithm>
#include <string>

namespace qmr {

Subspace Subspace::zero(FieldPtr field, std::size_t ambient)
{
    return Subspace(Mat(std::move(field), 0, ambient));
}

Subspace Subspace::full(FieldPtr field, std::size_t ambient)
{
    return Subspace(Mat::identity(std::move(field), ambient));
}

Subspace Subspace::span(const Mat& generators)
{
    return Subspace(rowspace_basis(generators));
}

Subspace Subspace::span(FieldPtr field, std::size_t ambient, const std::vector<std::vector<Elt>>& vectors)
{
    return span(Mat::from_rows(std::move(field), ambient, vectors));
}

Subspace Subspace::from_canonical(Mat basis)
{
    return Subspace(std::move(basis));
}

bool Subspace::contains(std::span<const Elt> v) const
{
    if (v.size() != ambient())
        throw InvalidInput("vector length does not match the ambient dimension");
    std::vector<Elt> r(v.begin(), v.end());
    // Reduce against the echelon basis: each pivot column is cleared once.
    const Field& f = field();
    for (std::size_t i = 0; i < dim(); ++i) {
        auto row = basis_.row(i);
        std::size_t pivot = 0;
        while (row[pivot].is_zero())
            ++pivot;
        if (!r[pivot].is_zero())
            f.axpy(r, f.neg(r[pivot]), row);
    }
    return std::all_of(r.begin(), r.end(), [](Elt e) { return e.is_zero(); });
}

bool Subspace::contains(const Subspace& other) const
{
    require_same_ambient(*this, other);
    if (other.dim() > dim())
        return false;
    for (std::size_t i = 0; i < other.dim(); ++i)
        if (!contains(other.basis_row(i)))
            return false;
    return true;
}

std::vector<std::vector<Elt>> Subspace::elements() const
{
    const Field& f = field();
    const Code q = f.order();
    Code total = 1;
    for (std::size_t i = 0; i < dim(); ++i) {
        if (total > (Code{1} << 24) / q)
            throw BudgetExceeded("listing subspace elements", std::to_string(q) + "^" + std::to_string(dim()));
        total *= q;
    }
    std::vector<std::vector<Elt>> out;
    out.reserve(total);
    std::vector<Code> digits(dim(), 0);
    for (Code n = 0; n < total; ++n) {
        std::vector<Elt> v(ambient());
        for (std::size_t i = 0; i < dim(); ++i)
            if (digits[i])
                f.axpy(v, Elt{digits[i]}, basis_.row(i));
        out.push_back(std::move(v));
        for (std::size_t i = 0; i < dim(); ++i) {
            if (++digits[i] < q)
                break;
            digits[i] = 0;
        }
    }
    return out;
}

Subspace Subspace::image(const Mat& map) const
{
    if (map.rows() != ambient())
        throw InvalidInput("linear map does not match the ambient dimension");
    require_same_field(basis_, map);
    return span(multiply(basis_, map));
}

Subspace Subspace::project(std::size_t offset, std::size_t len) const
{
    if (offset + len > ambient())
        throw InvalidInput("projection range exceeds the ambient dimension");
    Mat rows(field_ptr(), dim(), len);
    for (std::size_t i = 0; i < dim(); ++i)
        std::copy_n(basis_.row(i).begin() + offset, len, rows.row(i).begin());
    return span(rows);
}

Subspace Subspace::embed(std::size_t total, std::size_t offset) const
{
    if (offset + ambient() > total)
        throw InvalidInput("embedding range exceeds the target dimension");
    Mat rows(field_ptr(), dim(), total);
    for (std::size_t i = 0; i < dim(); ++i)
        std::copy(basis_.row(i).begin(), basis_.row(i).end(), rows.row(i).begin() + offset);
    // Shifting columns keeps the reduced echelon shape.
    return Subspace(std::move(rows));
}

bool operator==(const Subspace& a, const Subspace& b)
{
    return a.basis_ == b.basis_;
}

bool operator<(const Subspace& a, const Subspace& b)
{
    if (a.ambient() != b.ambient())
        return a.ambient() < b.ambient();
    if (a.dim() != b.dim())
        return a.dim() < b.dim();
    return a.basis_.data() < b.basis_.data();
}

std::size_t Subspace::hash() const
{
    std::size_t h = ambient() * 0x9e3779b97f4a7c15ull + dim();
    for (Elt e : basis_.data())
        h = (h ^ e.code) * 0x100000001b3ull;
    return h;
}

void require_same_ambient(const Subspace& a, const Subspace& b)
{
    if (a.ambient() != b.ambient())
        throw InvalidInput("subspaces live in ambient spaces of different dimension (" +
                           std::to_string(a.ambient()) + " vs " + std::to_string(b.ambient()) + ")");
    require_same_field(a.basis(), b.basis());
}

Subspace sum(const Subspace& a, const Subspace& b)
{
    require_same_ambient(a, b);
    return Subspace::span(vstack(a.basis(), b.basis()));
}

Subspace intersect(const Subspace& a, const Subspace& b)
{
    require_same_ambient(a, b);
    return Subspace::from_canonical(intersect_rowspaces(a.basis(), b.basis()));
}

std::size_t weight(const Subspace& s, const Subspace& v)
{
    require_same_ambient(s, v);
    // dim(S ∩ V) = dim S + dim V - dim(S + V)
    return s.dim() + v.dim() - rank(vstack(s.basis(), v.basis()));
}

std::vector<Elt> expand_vector(const FieldTower& tower, std::span<const Elt> v)
{
    const std::size_t m = tower.m();
    std::vector<Elt> out(m * v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        tower.expand_into(v[i], std::span<Elt>(out).subspan(i * m, m));
    return out;
}

std::vector<Elt> contract_vector(const FieldTower& tower, std::span<const Elt> coords)
{
    const std::size_t m = tower.m();
    if (coords.size() % m != 0)
        throw InvalidInput("expanded vector length is not a multiple of m");
    std::vector<Elt> out(coords.size() / m);
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = tower.contract(coords.subspan(i * m, m));
    return out;
}

Subspace fq_span(const FieldTower& tower, std::size_t k, const std::vector<std::vector<Elt>>& vectors)
{
    Mat rows(tower.small_ptr(), 0, tower.m() * k);
    for (const auto& v : vectors) {
        if (v.size() != k)
            throw InvalidInput("vector length does not match k = " + std::to_string(k));
        rows.append_row(expand_vector(tower, v));
    }
    return Subspace::span(rows);
}

Subspace fq_span(const FieldTower& tower, const Mat& rows)
{
    Mat expanded(tower.small_ptr(), rows.rows(), tower.m() * rows.cols());
    for (std::size_t i = 0; i < rows.rows(); ++i) {
        auto e = expand_vector(tower, rows.row(i));
        std::copy(e.begin(), e.end(), expanded.row(i).begin());
    }
    return Subspace::span(expanded);
}

Subspace fqm_span(const FieldTower& tower, const Mat& rows)
{
    const Field& big = tower.big();
    Mat expanded(tower.small_ptr(), 0, tower.m() * rows.cols());
    std::vector<Elt> scaled(rows.cols());
    for (std::size_t i = 0; i < rows.rows(); ++i) {
        for (Elt g : tower.gamma_basis()) {
            for (std::size_t c = 0; c < rows.cols(); ++c)
                scaled[c] = big.mul(g, rows(i, c));
            expanded.append_row(expand_vector(tower, scaled));
        }
    }
    return Subspace::span(expanded);
}

Subspace annihilated_subspace(const FieldTower& tower, const Mat& w)
{
    if (!(w.field() == tower.big()))
        throw InvalidInput("annihilator rows must have entries in F_{q^m}");
    return fqm_span(tower, kernel_basis(w));
}

Mat contracted_basis(const FieldTower& tower, const Subspace& s)
{
    const std::size_t m = tower.m();
    if (s.ambient() % m != 0)
        throw InvalidInput("subspace ambient dimension is not a multiple of m");
    Mat out(tower.big_ptr(), s.dim(), s.ambient() / m);
    for (std::size_t i = 0; i < s.dim(); ++i) {
        auto c = contract_vector(tower, s.basis_row(i));
        std::copy(c.begin(), c.end(), out.row(i).begin());
    }
    return out;
}

std::size_t rho(const FieldTower& tower, const Subspace& v)
{
    return rank(contracted_basis(tower, v));
}

namespace {

// Γ(v)^T: row j holds the j-th Γ-coordinate of every entry of v.
Mat gamma_matrix_transposed(const FieldTower& tower, std::span<const Elt> v)
{
    const std::size_t m = tower.m();
    Mat out(tower.small_ptr(), m, v.size());
    std::vector<Elt> coords(m);
    for (std::size_t i = 0; i < v.size(); ++i) {
        tower.expand_into(v[i], coords);
        for (std::size_t j = 0; j < m; ++j)
            out(j, i) = coords[j];
    }
    return out;
}

}  // namespace

Subspace support(const FieldTower& tower, std::span<const Elt> v)
{
    return Subspace::span(gamma_matrix_transposed(tower, v));
}

std::size_t rank_weight(const FieldTower& tower, std::span<const Elt> v)
{
    return rank(gamma_matrix_transposed(tower, v));
}

}  // namespace qmr
