#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "qmr/field.hpp"
#include "qmr/linalg.hpp"

namespace qmr {

/// Parameters of the tower F_p ⊆ F_q ⊆ F_{q^m}, q = p^h. The modulus is the
/// monic irreducible of degree h*m over F_p defining F_{q^m}, low degree first.
struct FieldSpec {
    std::uint32_t p = 2;
    std::uint32_t h = 1;
    std::uint32_t m = 1;
    std::vector<std::uint32_t> modulus;

    friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

class FieldTower;
using TowerPtr = std::shared_ptr<const FieldTower>;

/// F_{q^m} as one flat field F_p[x]/(modulus), with F_q realized as the fixed
/// field of x -> x^q. F_q scalars have their own compact codes (the field
/// F_p[y]/(g) for the default degree-h modulus g) and embed through a fixed
/// root of g. F_q-coordinates are taken in the basis (1, γ, ..., γ^{m-1})
/// for the generator γ returned by primitive_generator().
class FieldTower {
    struct private_tag {};

public:
    /// An empty spec.modulus selects default_modulus(p, h*m).
    static TowerPtr create(FieldSpec spec);
    static TowerPtr create(std::uint32_t p, std::uint32_t h, std::uint32_t m);

    const FieldSpec& spec() const { return spec_; }
    std::uint32_t p() const { return spec_.p; }
    std::uint32_t h() const { return spec_.h; }
    std::uint32_t m() const { return spec_.m; }
    std::uint64_t q() const { return small_->order(); }

    /// F_{q^m}.
    const Field& big() const { return *big_; }
    const FieldPtr& big_ptr() const { return big_; }
    /// F_q with its own codes.
    const Field& small() const { return *small_; }
    const FieldPtr& small_ptr() const { return small_; }
    /// F_p, used for materialized F_p-linear maps on F_{q^m}.
    const FieldPtr& prime_ptr() const { return prime_; }

    /// x^(q^e).
    Elt frobenius_q(Elt x, std::uint64_t e) const;
    /// Membership in F_{q^r}; throws InvalidInput unless r divides m.
    bool is_in_subfield(Elt x, std::uint32_t r) const;
    /// An F_p-basis (h*r elements) of F_{q^r}, the kernel of x -> x^(q^r) - x.
    std::vector<Elt> subfield_basis(std::uint32_t r) const;
    /// The first element (in code order) with F_{q^m} = F_q(γ).
    Elt primitive_generator() const { return gamma_; }
    const std::vector<Elt>& gamma_basis() const { return gamma_powers_; }

    /// F_q scalar (small code) -> its image in F_{q^m}.
    Elt embed(Elt scalar) const { return embedding_[scalar.code]; }
    /// F_{q^m} element -> its small code, if it lies in F_q.
    std::optional<Elt> to_scalar(Elt x) const;

    /// F_q-coordinates of x in the basis (1, γ, ..., γ^{m-1}); out has m entries.
    void expand_into(Elt x, std::span<Elt> out) const;
    std::vector<Elt> expand(Elt x) const;
    Elt contract(std::span<const Elt> coords) const;

    /// Matrix over F_p of an F_p-linear map on F_{q^m}, in the power basis of
    /// the modulus root: column j is the image of x^j.
    template <class Map>
    Mat fp_linear_map(Map&& map) const
    {
        const unsigned d = big_->degree();
        Mat out(prime_, d, d);
        for (unsigned j = 0; j < d; ++j) {
            Elt image = map(Elt{power_basis_code(j)});
            for (unsigned i = 0; i < d; ++i)
                out(i, j) = Elt{big_->digit(image, i)};
        }
        return out;
    }
    /// The element whose F_p-coordinates (power basis) are given.
    Elt from_fp_coords(std::span<const Elt> coords) const;

    FieldTower(FieldSpec spec, private_tag);

private:
    Code power_basis_code(unsigned j) const;

    FieldSpec spec_;
    FieldPtr big_;
    FieldPtr small_;
    FieldPtr prime_;
    std::vector<Elt> embedding_;
    Elt gamma_;
    std::vector<Elt> gamma_powers_;
    Mat to_coords_;    // F_p matrix: power-basis digits -> (θ^i γ^j) coefficients
    Mat from_coords_;  // its inverse
    std::vector<std::uint32_t> expand_cache_;  // order * m small codes, small fields only
};

}  // namespace qmr
