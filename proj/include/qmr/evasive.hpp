#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qmr/codes.hpp"
#include "qmr/enumerate.hpp"
#include "qmr/subspace.hpp"

namespace qmr {

/// Which test subspaces a report ranged over.
struct FamilyDescriptor {
    enum class Kind { lambda, lambda_k, sidon, explicit_list };

    Kind kind = Kind::lambda;
    std::size_t k = 0;              // ambient F_{q^m}-dimension
    std::size_t h = 0;              // F_{q^m}-dimension of the members
    std::vector<std::size_t> kvec;  // block sizes, lambda_k and sidon only
};

std::string to_string(FamilyDescriptor::Kind kind);

struct EvasiveWitness {
    /// Position in the family's canonical order (see LambdaFamily::index and
    /// sidon_pair_check for what the index counts).
    std::uint64_t index = 0;
    std::size_t weight = 0;
    /// c x k matrix over F_{q^m} in reduced echelon form whose kernel is the
    /// member; empty for explicit families.
    Mat annihilator;
    Subspace member;
};

struct EvasiveReport {
    bool verdict = true;
    FamilyDescriptor family;
    std::size_t bound = 0;
    std::optional<EvasiveWitness> witness;
    /// Members examined. Equals the family size when exhaustive.
    std::uint64_t scanned = 0;
    std::size_t max_weight_seen = 0;
    bool exhaustive = true;
    /// Sidon checks: "lambda-scan" or "ratio". Scans: "scan" or "sampled".
    std::string method = "scan";
};

struct ScanOptions {
    std::uint64_t budget = std::uint64_t{1} << 24;
    unsigned workers = 1;
    /// Stop at the first member above the bound. The witness is the same; the
    /// report is then no longer exhaustive.
    bool stop_on_witness = false;
};

/// Λ_h (kvec empty) or Λ_{h,𝐤}: h-dimensional F_{q^m}-subspaces of F_{q^m}^k,
/// in the second case only those containing no block ι_i(F_{q^m}^{k_i}).
///
/// Members are walked through their annihilators: the (k-h)-dimensional
/// subspaces W of F_{q^m}^k, V = {x : W x^T = 0}, in SubspaceEnumerator
/// order. index() refers to that raw order, excluded members included.
class LambdaFamily {
public:
    LambdaFamily(TowerPtr tower, std::size_t k, std::size_t h, std::vector<std::size_t> kvec = {});

    const FieldTower& tower() const { return *tower_; }
    const TowerPtr& tower_ptr() const { return tower_; }
    std::size_t k() const { return k_; }
    std::size_t h() const { return h_; }
    const std::vector<std::size_t>& kvec() const { return kvec_; }
    FamilyDescriptor descriptor() const;

    /// Number of annihilators walked, excluded members included.
    const BigInt& raw_count() const { return walker_.count(); }
    /// Number of members, by inclusion-exclusion over the blocks.
    BigInt member_count() const;

    /// V = ker W contains block i iff W vanishes on the block's columns.
    bool admissible(const Mat& annihilator) const;
    Subspace member(const Mat& annihilator) const;
    Mat annihilator_at(std::uint64_t index) const { return walker_.at(index); }
    std::uint64_t index_of(const Mat& annihilator) const { return walker_.index_of(annihilator); }

    /// A fresh enumerator over the annihilators.
    SubspaceEnumerator walker() const { return walker_; }

    /// Every member, in order. Refuses beyond budget.
    std::vector<Subspace> members(std::uint64_t budget = 1u << 16) const;

private:
    TowerPtr tower_;
    std::size_t k_;
    std::size_t h_;
    std::vector<std::size_t> kvec_;
    SubspaceEnumerator walker_;
};

LambdaFamily lambda_family(TowerPtr tower, std::size_t k, std::size_t h);
/// Requires 1 <= h <= k - 1.
LambdaFamily lambda_hk_family(TowerPtr tower, const std::vector<std::size_t>& kvec, std::size_t h);

/// dim(S ∩ ker W), computed as n - rank of the F_q-matrix whose rows are the
/// expansions of W s_i^T over an F_q-basis s_i of S.
class WeightEvaluator {
public:
    explicit WeightEvaluator(const QSystem& s);
    std::size_t operator()(const Mat& annihilator) const;

private:
    TowerPtr tower_;
    std::size_t k_;
    Mat basis_;  // n x k over F_{q^m}
};

/// max over the family of wt_S(V) <= bound. Full scan unless stop_on_witness;
/// the witness is always the first violating member in canonical order.
EvasiveReport is_evasive(const QSystem& s, const LambdaFamily& family, std::size_t bound,
                         const ScanOptions& opts = {});
/// An explicit list of F_q-subspaces of F_q^{mk}; indices are list positions.
EvasiveReport is_evasive(const QSystem& s, const std::vector<Subspace>& family, std::size_t bound);
/// Random annihilators drawn from a seeded generator; excluded draws are
/// redrawn. Never exhaustive.
EvasiveReport is_evasive_sampled(const QSystem& s, const LambdaFamily& family, std::size_t bound,
                                 std::uint64_t seed, std::uint64_t samples);

/// (Λ_h, r)-evasive.
EvasiveReport is_hr_evasive(const QSystem& s, std::size_t h, std::size_t r, const ScanOptions& opts = {});
/// (Λ_h, h)-evasive.
EvasiveReport is_h_scattered(const QSystem& s, std::size_t h, const ScanOptions& opts = {});

enum class SidonMethod { automatic, lambda_scan, ratio };

/// A ⊕ B ⊆ F_{q^m}^2 against Λ_{1,(1,1)} with bound 1, for nonzero
/// F_q-subspaces A, B of F_{q^m} (given in F_q^m).
///
/// The member ⟨(λ,1)⟩ meets A ⊕ B in a copy of A ∩ λB, and the weight only
/// depends on the class of λ modulo F_q^*. The lambda scan walks these
/// classes as projective points of F_q^m and intersects. The ratio method
/// counts, for each λ, the pairs (a,b) ∈ A* x B* with a = λb; that number is
/// q^dim(A ∩ λB) - 1, so the pair fails iff some count exceeds q - 1.
///
/// Witness index: position of the class of λ among projective points of
/// F_q^m. Both methods report the smallest failing index.
EvasiveReport sidon_pair_check(const FieldTower& tower, const Subspace& a, const Subspace& b,
                               SidonMethod method = SidonMethod::automatic, unsigned workers = 1);

/// The system A ⊕ B ⊆ F_{q^m}^2 of a rank-one pair.
QSystem pair_system(TowerPtr tower, const Subspace& a, const Subspace& b);

struct CascadeReport {
    bool holds = true;
    std::optional<std::size_t> failing_level;
    std::vector<EvasiveReport> levels;  // l = 1 .. k-1
};

/// For every l in [k-1]: (Λ_{l,𝐤}, r - k + 1 + l)-evasive. Levels whose bound
/// is negative are reported as failing without a scan.
CascadeReport cascade_check(const QSystem& s, const std::vector<std::size_t>& kvec, std::size_t r,
                            const ScanOptions& opts = {});

}  // namespace qmr
