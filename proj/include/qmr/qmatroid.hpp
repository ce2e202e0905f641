#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "qmr/subspace.hpp"
#include "qmr/tower.hpp"

namespace qmr {

/// A rank function on the subspace lattice of F_q^n.
class RankOracle {
public:
    enum class Kind { uniform, representable, direct_sum, pullback, custom };

    virtual ~RankOracle() = default;

    virtual std::size_t rank(const Subspace& v) const = 0;
    virtual std::string describe() const = 0;

    Kind kind() const { return kind_; }
    const FieldPtr& field() const { return field_; }
    std::size_t ground_dim() const { return n_; }
    std::size_t rank_value() const { return rank(Subspace::full(field_, n_)); }

protected:
    RankOracle(Kind kind, FieldPtr field, std::size_t n) : kind_(kind), field_(std::move(field)), n_(n) {}
    void check_argument(const Subspace& v) const;

private:
    Kind kind_;
    FieldPtr field_;
    std::size_t n_;
};

using OraclePtr = std::shared_ptr<const RankOracle>;

std::string to_string(RankOracle::Kind kind);

/// U_{k,n}(q): V -> min(k, dim V).
OraclePtr uniform_oracle(FieldPtr fq, std::size_t k, std::size_t n);

/// M_G for a k x n matrix G over F_{q^m} of full row rank:
/// U -> rank of G A^U, A^U a matrix whose columns are a basis of U.
OraclePtr representable_oracle(TowerPtr tower, Mat g);

/// The F_{q^m}-rank ρ on F_q-subspaces of F_{q^m}^k (ground space F_q^{mk}).
/// This is M_G for G with columns γ^j e_i.
OraclePtr span_rank_oracle(TowerPtr tower, std::size_t k);

/// Direct sum, folded left for more than two summands. Each binary step
/// minimizes dim V + ρ'_1(X) + ρ'_2(X) - dim X over all X ≤ V, with results
/// memoized per canonical subspace.
OraclePtr direct_sum_oracle(const std::vector<OraclePtr>& summands);

/// V -> M.rank(V psi) for an injective linear map psi (n x N over F_q, rows
/// are the images of the unit vectors). An invertible psi gives an
/// equivalent q-matroid; an injective one restricts M to the image first.
OraclePtr pullback_oracle(OraclePtr m, Mat psi);

/// Wraps an arbitrary function; no axioms are assumed.
OraclePtr custom_oracle(FieldPtr fq, std::size_t n, std::function<std::size_t(const Subspace&)> fn,
                        std::string name);

// ---- axioms -----------------------------------------------------------------

struct AxiomReport {
    bool pass = true;
    std::string axiom;  // "R1", "R2" or "R3" when failing
    std::optional<Subspace> a;
    std::optional<Subspace> b;
    std::string detail;
    std::uint64_t subspaces_checked = 0;
    std::uint64_t pairs_checked = 0;
    bool exhaustive = true;
};

/// All pairs when the lattice has at most `budget` members, otherwise an error.
AxiomReport check_axioms(const RankOracle& m, std::uint64_t budget = 1u << 14);
/// Random subspace pairs drawn from a seeded generator.
AxiomReport check_axioms_sampled(const RankOracle& m, std::uint64_t seed, std::uint64_t pairs);

// ---- derived families ---------------------------------------------------------

struct CyclicFlatRecord {
    Subspace flat;
    std::size_t rank = 0;
};

/// Every subspace of the ground space in canonical order (dimension ascending,
/// enumerator order within a dimension) with index lists into it.
struct DerivedFamilies {
    std::vector<Subspace> lattice;
    std::vector<std::size_t> ranks;
    std::vector<std::size_t> independents;
    std::vector<std::size_t> circuits;
    std::vector<std::size_t> flats;
    std::vector<std::size_t> opens;
    std::vector<CyclicFlatRecord> cyclic_flats;
};

/// Flats by the cover test; cross-checked against the maximality reading,
/// throwing InvariantViolation if the two ever differ.
DerivedFamilies derived_families(const RankOracle& m, std::uint64_t budget = 1u << 14);

/// A is a flat iff no B ⊋ A has ρ(B) = ρ(A). Direct transcription, quadratic.
std::vector<std::size_t> flats_by_maximality(const std::vector<Subspace>& lattice,
                                             const std::vector<std::size_t>& ranks);

/// dim(I ∩ X) <= ρ(X) for every cyclic flat X.
bool independence_via_cyclic_flats(const std::vector<CyclicFlatRecord>& cyclic_flats, const Subspace& i);

struct OracleComparison {
    bool equal = true;
    std::optional<Subspace> witness;  // first differing subspace in canonical order
    std::size_t rank_a = 0;
    std::size_t rank_b = 0;
    std::uint64_t checked = 0;
};

OracleComparison equal_oracles(const RankOracle& a, const RankOracle& b, std::uint64_t budget = 1u << 16);

/// Memo table shared by the direct-sum oracle; concurrent readers, and
/// writers that always store the same value for a key.
class RankMemo {
public:
    std::optional<std::size_t> find(const Subspace& v) const;
    void store(const Subspace& v, std::size_t rank);
    std::size_t size() const;

private:
    mutable std::shared_mutex mutex_;
    std::unordered_map<Subspace, std::size_t, SubspaceHash> table_;
};

}  // namespace qmr
