#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "qmr/codes.hpp"
#include "qmr/subspace.hpp"
#include "qmr/tower.hpp"

namespace qmr {

/// (p, h) with q = p^h. Throws InvalidInput if q is not a prime power.
std::pair<std::uint32_t, std::uint32_t> prime_power(std::uint64_t q);
/// The default tower for F_{q^m}.
TowerPtr tower_for(std::uint64_t q, std::uint32_t m);

// ---- F_q-subspaces of F_{q^m} --------------------------------------------------
// A rank-one ambient: subspaces of F_{q^m} are held as subspaces of F_q^m.

Subspace field_subspace(const FieldTower& tower, const std::vector<Elt>& elements);
/// The canonical basis, contracted to elements of F_{q^m}.
std::vector<Elt> field_basis(const FieldTower& tower, const Subspace& s);
/// ⟨ab : a ∈ U, b ∈ V⟩ over F_q.
Subspace mul_span(const FieldTower& tower, const Subspace& u, const Subspace& v);
/// x * V.
Subspace scale(const FieldTower& tower, Elt x, const Subspace& v);
/// {b + ξ b^q : b ∈ V}.
Subspace twisted(const FieldTower& tower, const Subspace& v, Elt xi);

// ---- block systems -------------------------------------------------------------

struct BlockSpec {
    std::size_t n = 0;    // F_q-dimension of the block
    std::size_t k = 0;    // ambient F_{q^m}-dimension of the block
    std::uint32_t m = 0;  // the block lives on V ⊆ F_{q^{m_i}}
};

/// {(x, x^q, ..., x^{q^{k-1}}) : x ∈ V} for V ⊆ F_{q^{m_i}} given in F_q^m.
QSystem pseudoregulus_block(TowerPtr tower, const Subspace& v, std::size_t k, std::uint32_t mi);

/// ι_1(S_1) + ... + ι_t(S_t) in F_{q^m}^{k_1 + ... + k_t}.
QSystem direct_sum_system(const std::vector<QSystem>& blocks);

struct PseudoregulusSum {
    TowerPtr tower;
    std::vector<BlockSpec> specs;
    std::vector<Subspace> supports;  // V_i ⊆ F_{q^{m_i}}, in F_q^m
    std::vector<QSystem> blocks;
    QSystem system;
    std::vector<std::size_t> kvec;
};

/// Chooses V_i ⊆ F_{q^{m_i}} of F_q-dimension n_i.
using SupportChooser = std::function<Subspace(const FieldTower&, std::size_t index, const BlockSpec&)>;

/// The default V_i: walk the F_p-basis of F_{q^{m_i}} from subfield_basis and
/// keep each element that is F_q-independent of those kept, until n_i.
Subspace default_support(const FieldTower& tower, std::size_t index, const BlockSpec& spec);

/// Blocks with pairwise coprime m_i over m = m_1 ... m_t.
PseudoregulusSum coprime_pseudoregulus_sum(std::uint64_t q, const std::vector<BlockSpec>& specs,
                                           const SupportChooser& choose = default_support);
/// Rejects bad block lists with the violated condition named, before any field work.
void validate_block_specs(const std::vector<BlockSpec>& specs);

// ---- rank-one pairs --------------------------------------------------------------

struct FieldPair {
    Subspace a;
    Subspace b;
};

/// S_1 = ⟨1, γ, ..., γ^{n1-1}⟩, S_2 = ⟨1, γ^{n1}, ..., γ^{n1(n2-1)}⟩. Needs m >= n1 n2.
FieldPair polynomial_pair(const FieldTower& tower, std::size_t n1, std::size_t n2);

/// S_1 = F_{q^r}, S_2 = {a + ξ a^q : a ∈ F_{q^r}} for a proper divisor r of m
/// and ξ outside F_{q^r}.
FieldPair subfield_xi_pair(const FieldTower& tower, std::uint32_t r, Elt xi);

/// x -> x^q - x composed i times, as an F_p-matrix (see FieldTower::fp_linear_map).
Mat iterated_artin_schreier(const FieldTower& tower, std::size_t i);
/// Its kernel as an F_q-subspace of F_{q^m}.
Subspace artin_schreier_kernel(const FieldTower& tower, std::size_t i);

struct ModularPair {
    TowerPtr tower;
    FieldPair pair;
    Elt xi;
    std::size_t dim_f1 = 0;  // dim F_{n1}
    std::size_t dim_f2 = 0;  // dim F_{n2}
    std::size_t dim_fl = 0;  // dim F_{n1+n2-1}
    std::uint64_t xi_trials = 0;
};

/// First ξ in code order with V ∩ ξV = {0}; nullopt if none.
std::optional<Elt> find_separating_scalar(const FieldTower& tower, const Subspace& v, std::uint64_t* trials = nullptr);

/// q = p^h, m = p^r, n1 + n2 - 1 <= m/2: (F_{n1}, {a + ξ a^q : a ∈ F_{n2}})
/// with F_{n1+n2-1} ∩ ξ F_{n1+n2-1} = {0}.
ModularPair modular_pair(std::uint32_t p, std::uint32_t h, std::uint32_t r, std::size_t n1, std::size_t n2);

}  // namespace qmr
