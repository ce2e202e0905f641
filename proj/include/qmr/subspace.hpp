#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "qmr/linalg.hpp"
#include "qmr/tower.hpp"

namespace qmr {

/// A subspace of F^N held by its canonical basis: the nonzero rows of the
/// reduced row echelon form. Two subspaces are equal iff their bases are.
///
/// Subspaces of F_{q^m}^k are stored as F_q-subspaces of F_q^{mk}: block i
/// (columns [m*i, m*i + m)) holds the Γ-coordinates of the i-th entry.
class Subspace {
public:
    Subspace() = default;

    static Subspace zero(FieldPtr field, std::size_t ambient);
    static Subspace full(FieldPtr field, std::size_t ambient);
    /// Row space of any matrix.
    static Subspace span(const Mat& generators);
    static Subspace span(FieldPtr field, std::size_t ambient, const std::vector<std::vector<Elt>>& vectors);
    /// Trusts that basis is already in canonical form.
    static Subspace from_canonical(Mat basis);

    const Field& field() const { return basis_.field(); }
    const FieldPtr& field_ptr() const { return basis_.field_ptr(); }
    std::size_t ambient() const { return basis_.cols(); }
    std::size_t dim() const { return basis_.rows(); }
    const Mat& basis() const { return basis_; }
    std::span<const Elt> basis_row(std::size_t i) const { return basis_.row(i); }

    bool contains(std::span<const Elt> v) const;
    bool contains(const Subspace& other) const;
    /// All q^dim vectors, in the order of the F_q-combination digits (first
    /// basis row least significant). Only for small spaces.
    std::vector<std::vector<Elt>> elements() const;

    /// Image under v -> v * map for a (ambient x N') matrix.
    Subspace image(const Mat& map) const;
    /// Coordinates [offset, offset + len) of every vector.
    Subspace project(std::size_t offset, std::size_t len) const;
    /// This subspace placed in coordinates [offset, offset + ambient) of F^total.
    Subspace embed(std::size_t total, std::size_t offset) const;

    friend bool operator==(const Subspace& a, const Subspace& b);
    /// Dimension first, then basis codes lexicographically. A total order used
    /// for map keys; it is not the enumeration order.
    friend bool operator<(const Subspace& a, const Subspace& b);

    std::size_t hash() const;

private:
    explicit Subspace(Mat basis) : basis_(std::move(basis)) {}
    Mat basis_;
};

struct SubspaceHash {
    std::size_t operator()(const Subspace& s) const { return s.hash(); }
};

Subspace sum(const Subspace& a, const Subspace& b);
Subspace intersect(const Subspace& a, const Subspace& b);
/// Throws InvalidInput unless a and b share field and ambient dimension.
void require_same_ambient(const Subspace& a, const Subspace& b);

/// dim(S ∩ V).
std::size_t weight(const Subspace& s, const Subspace& v);

// ---- F_{q^m}^k <-> F_q^{mk} -------------------------------------------------

/// Γ-coordinates of v ∈ F_{q^m}^k, block by block (length m*k, F_q codes).
std::vector<Elt> expand_vector(const FieldTower& tower, std::span<const Elt> v);
std::vector<Elt> contract_vector(const FieldTower& tower, std::span<const Elt> coords);

/// F_q-span of vectors of F_{q^m}^k.
Subspace fq_span(const FieldTower& tower, std::size_t k, const std::vector<std::vector<Elt>>& vectors);
/// F_q-span of the rows of a matrix over F_{q^m}.
Subspace fq_span(const FieldTower& tower, const Mat& rows);
/// The F_q-subspace underlying the F_{q^m}-row space of rows: spanned by
/// γ^j * row for every row and j < m.
Subspace fqm_span(const FieldTower& tower, const Mat& rows);

/// The F_q-subspace underlying {x ∈ F_{q^m}^k : w x^T = 0} for a c x k
/// matrix w over F_{q^m}.
Subspace annihilated_subspace(const FieldTower& tower, const Mat& w);

/// The canonical basis of an expanded subspace, contracted back to F_{q^m}^k.
Mat contracted_basis(const FieldTower& tower, const Subspace& s);

/// dim over F_{q^m} of the F_{q^m}-span of V.
std::size_t rho(const FieldTower& tower, const Subspace& v);

/// Column space of the n x m matrix Γ(v) (row i = Γ-coordinates of v_i),
/// a subspace of F_q^n.
Subspace support(const FieldTower& tower, std::span<const Elt> v);
/// dim support(v): the rank weight.
std::size_t rank_weight(const FieldTower& tower, std::span<const Elt> v);

}  // namespace qmr

template <>
struct std::hash<qmr::Subspace> {
    std::size_t operator()(const qmr::Subspace& s) const { return s.hash(); }
};
