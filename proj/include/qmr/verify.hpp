#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qmr/constructions.hpp"
#include "qmr/evasive.hpp"
#include "qmr/qmatroid.hpp"

namespace qmr {

enum class RepStatus {
    representable_with_witness,
    /// A clause of the rank-one summary theorem applies but no witness was
    /// built or verified here.
    representable_cited,
    refuted_exhaustively,
    necessary_condition_violated,
    unknown,
};

std::string to_string(RepStatus s);

/// Conditions (1)-(3) of the characterization of representations of a
/// direct sum of uniform q-matroids, checked on every subspace of F_q^n.
struct TripleCheck {
    bool ran = false;
    /// (1): ρ_S ∘ ψ_G equals the direct-sum rank function.
    bool cond1 = false;
    /// (2): ρ_S(ψ_G I) = dim I ⇔ dim(I ∩ E_J) <= k_J for all J.
    bool cond2 = false;
    /// (3): (Λ_{k-1,𝐤}, k-1)-evasive.
    bool cond3 = false;
    bool agree = false;
    std::uint64_t subspaces_checked = 0;
    std::optional<Subspace> cond1_witness;
    std::optional<Subspace> cond2_witness;
};

struct RepresentationVerdict {
    RepStatus status = RepStatus::unknown;
    TowerPtr tower;
    std::uint64_t q = 0;
    std::uint32_t m = 0;
    std::vector<std::size_t> kvec;
    std::vector<std::size_t> nvec;
    /// The witness system's blocks (subspaces of F_q^{m k_i}) when there is one.
    std::vector<Subspace> witness_blocks;
    std::string construction;
    std::vector<EvasiveReport> evidence;
    std::vector<int> clauses;
    std::optional<TripleCheck> triple;
    std::optional<CascadeReport> cascade;
    /// Pairs tested, up to and including the witness in canonical order.
    std::uint64_t pairs_checked = 0;
    /// On a refutation, the number of unreduced pairs the tested ones stand for.
    std::uint64_t pairs_covered = 0;
    std::string note;
};

struct VerifyOptions {
    ScanOptions scan;
    /// Run the triple cross-check when F_q^n has at most this many subspaces.
    std::uint64_t triple_budget = 1u << 12;
    bool cascade = true;
};

/// Whether ι_1(S_1) + ... + ι_t(S_t) represents U_{k_1,n_1} ⊕ ... ⊕ U_{k_t,n_t}.
/// Condition (3) decides; (1) and (2) are cross-checked when small enough and
/// must agree, otherwise InvariantViolation. A positive verdict is followed by
/// the cascade check, whose failure is also an InvariantViolation.
RepresentationVerdict verify_uniform_sum_representation(const std::vector<QSystem>& blocks,
                                                        const VerifyOptions& opts = {});

/// The three conditions alone, on the given blocks.
TripleCheck triple_check(const std::vector<QSystem>& blocks, const EvasiveReport& cond3,
                         std::uint64_t budget = 1u << 12);

// ---- rank-one targets --------------------------------------------------------------

struct NecessaryCheck {
    enum class Result { pass, violation, not_applicable };
    Result result = Result::pass;
    std::string note;
};

/// m >= 2 max n_i, required when every n_i >= 2.
NecessaryCheck necessary_condition_rank1(const std::vector<std::size_t>& nvec, std::uint32_t m);

struct ClauseHit {
    int clause = 0;
    std::string detail;
    /// Whether a witness was generated for this clause.
    bool built = false;
    std::optional<FieldPair> witness;
    std::optional<Elt> xi;
    std::optional<EvasiveReport> evidence;
};

struct DispatchResult {
    RepStatus status = RepStatus::unknown;
    std::uint64_t q = 0;
    std::uint32_t m = 0;
    std::size_t n1 = 0;
    std::size_t n2 = 0;
    std::vector<ClauseHit> clauses;
    TowerPtr tower;  // set when a witness was built
    std::string note;
};

struct DispatchOptions {
    bool build_witnesses = true;
    /// Largest |A||B| or class count a witness check may touch.
    std::uint64_t verify_budget = std::uint64_t{1} << 26;
};

/// Every clause of the rank-one summary theorem whose hypothesis holds for
/// U_{1,n1} ⊕ U_{1,n2} over F_{q^m}; witnesses for clauses (2) and (5).
DispatchResult dispatch_theorem_summary(std::uint64_t q, std::size_t n1, std::size_t n2, std::uint32_t m,
                                        const DispatchOptions& opts = {});

struct PairSearchOptions {
    std::uint64_t budget = std::uint64_t{1} << 24;
    unsigned workers = 1;
    /// Only consider A up to multiplication by F_{q^m}^*.
    bool reduce_orbits = true;
};

/// Every pair (A, B) of F_q-subspaces of F_{q^m} with dims (n1, n2), A taken
/// up to scaling. Returns the first pair in canonical order passing the
/// Sidon criterion, or a refutation.
RepresentationVerdict exhaustive_pair_search(TowerPtr tower, std::size_t n1, std::size_t n2,
                                             const PairSearchOptions& opts = {});

struct RandomSearchResult {
    RepresentationVerdict verdict;
    std::uint64_t trials = 0;
    /// FNV-1a over the canonical bases of every trial.
    std::uint64_t transcript = 0;
};

RandomSearchResult randomized_pair_search(TowerPtr tower, std::size_t n1, std::size_t n2, std::uint64_t seed,
                                          std::uint64_t max_trials);

/// Both routes on a rank-one pair: the Sidon criterion and the scan of
/// Λ_{1,(1,1)} on A ⊕ B (the latter only when its family fits scan_budget).
std::vector<EvasiveReport> certify_pair(TowerPtr tower, const FieldPair& pair,
                                        std::uint64_t scan_budget = std::uint64_t{1} << 20);

}  // namespace qmr
