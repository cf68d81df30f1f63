#pragma once

#include <memory>
#include <mutex>
#include <vector>

#include "aksz/forms.hpp"

namespace aksz {

using PolyMatrix = std::vector<std::vector<GradedPoly>>;

PolyMatrix matrix_product(const PolyMatrix& a, const PolyMatrix& b);
PolyMatrix identity_matrix(const Chart& chart, std::size_t n);

/// A closed 2-form on a fully doubled chart together with its structure
/// matrix C over the base chart, defined by
///     d omega / d(dx^a) = sum_b C_ab * dx^b   (left derivative, coefficient left).
/// The contraction i_X omega is then (-1)^{X~} sum_{a,b} X^a C_ab dx^b.
class SymplecticStructure {
public:
    explicit SymplecticStructure(SuperForm omega);

    const SuperForm& form() const noexcept { return omega_; }
    const Chart& doubled() const noexcept { return omega_.chart(); }
    const Chart& base() const noexcept { return base_; }
    Parity parity() const noexcept { return parity_; }
    const PolyMatrix& matrix() const noexcept { return matrix_; }

    /// Psi with Psi C = C Psi = 1; computed on first request.
    const PolyMatrix& inverse() const;

private:
    SuperForm omega_;
    Chart base_;
    Parity parity_ = Parity::even;
    PolyMatrix matrix_;
    struct Cache {
        std::once_flag once;
        PolyMatrix inverse;
    };
    std::shared_ptr<Cache> cache_;
};

/// (C0 + nu)^{-1} = C0^{-1} sum_k (-nu C0^{-1})^k, where C0 is the constant part
/// and every term of nu contains an odd coordinate.
PolyMatrix invert_two_form(const SymplecticStructure& omega);
PolyMatrix invert_constant_plus_nilpotent(const PolyMatrix& c, const Chart& chart);

/// The X with i_X omega = -dH.
VectorField hamiltonian_field(const GradedPoly& H, const SymplecticStructure& omega);

/// (f, g) = X_f(g).
GradedPoly poisson_bracket(const GradedPoly& f, const GradedPoly& g, const SymplecticStructure& omega);

struct MasterCheck {
    GradedPoly bracket;            // (S, S)
    bool bracket_vanishes = false;
    bool field_homological = false;  // is_homological(X_S)
    bool trivially_zero = false;     // parity forces (S, S) = 0
    bool agree() const { return bracket_vanishes == field_homological; }
    bool passed() const { return bracket_vanishes && field_homological; }
};

MasterCheck master_equation(const GradedPoly& S, const SymplecticStructure& omega);
/// (S, S) = 0 exactly.
bool master_check(const GradedPoly& S, const SymplecticStructure& omega);

}  // namespace aksz
