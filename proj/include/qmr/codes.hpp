#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "qmr/subspace.hpp"
#include "qmr/tower.hpp"

namespace qmr {

/// An n-dimensional F_q-subspace of F_{q^m}^k whose F_{q^m}-span is all of
/// F_{q^m}^k. The subspace lives in F_q^{mk} (see Subspace).
struct QSystem {
    TowerPtr tower;
    std::size_t k = 0;
    Subspace space;

    std::size_t n() const { return space.dim(); }
};

/// Validates dimensions and the spanning condition.
QSystem make_system(TowerPtr tower, std::size_t k, Subspace space);

/// [n,k]_{q^m/q} code given by a k x n generator matrix of full row rank.
class RankMetricCode {
public:
    RankMetricCode(TowerPtr tower, Mat generator);

    const TowerPtr& tower() const { return tower_; }
    const Mat& generator() const { return g_; }
    std::size_t k() const { return g_.rows(); }
    std::size_t n() const { return g_.cols(); }
    /// The columns of G are F_q-linearly independent.
    bool nondegenerate() const { return nondegenerate_; }

    /// u G for u ∈ F_{q^m}^k.
    std::vector<Elt> encode(std::span<const Elt> u) const;

private:
    TowerPtr tower_;
    Mat g_;
    bool nondegenerate_ = false;
};

/// F_q-span of the columns of G. Throws InvalidInput for a degenerate code.
QSystem code_to_system(const RankMetricCode& code);
/// Generator whose columns are the contracted canonical basis of S.
RankMetricCode system_to_code(const QSystem& s);

/// ψ_G as an n x mk matrix over F_q: row i is the expanded i-th column of G,
/// so v -> v * psi is v -> v G^T in expanded coordinates.
Mat psi_matrix(const RankMetricCode& code);
/// ψ_G(v) = v G^T ∈ F_{q^m}^k for v ∈ F_q^n.
std::vector<Elt> psi_g(const RankMetricCode& code, std::span<const Elt> v);

enum class DistanceMethod { automatic, codeword, hyperplane };

struct DistanceReport {
    std::size_t distance = 0;
    DistanceMethod method = DistanceMethod::automatic;
    /// Codeword scan: a minimum-weight codeword. Hyperplane scan: the normal
    /// vector u of a hyperplane of maximum weight.
    std::vector<Elt> witness;
    std::size_t witness_weight = 0;
    std::uint64_t scanned = 0;
};

std::string to_string(DistanceMethod m);

/// Codeword scan: min rank weight over all q^{mk} - 1 nonzero codewords.
/// Hyperplane scan: n - max dim(S ∩ u^⊥) over projective points u, with the
/// intersection computed in F_q^{mk}. Automatic picks the hyperplane scan
/// unless k = 1.
DistanceReport min_rank_distance(const RankMetricCode& code, DistanceMethod method = DistanceMethod::automatic,
                                 std::uint64_t budget = 1u << 22);
bool is_mrd(const RankMetricCode& code, std::uint64_t budget = 1u << 22);

/// Rows α_j^{q^i}, i < k, for F_q-independent α_1..α_n.
Mat gabidulin_generator(const FieldTower& tower, std::size_t k, const std::vector<Elt>& alphas);

struct SupportDuality {
    bool holds = false;
    Subspace lhs;  // ψ_G^{-1}(S ∩ ⟨u⟩^⊥)
    Subspace rhs;  // supp(uG)^⊥
};

SupportDuality verify_support_duality(const RankMetricCode& code, std::span<const Elt> u);

/// Orthogonal complement in F^n under the standard dot product.
Subspace orthogonal_complement(const Subspace& s);

}  // namespace qmr
