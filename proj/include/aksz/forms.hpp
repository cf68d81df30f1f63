#pragma once

#include <set>

#include "aksz/vector_field.hpp"

namespace aksz {

/// A (pseudo)differential form: a function on a chart carrying antitangent
/// coordinates. Coordinates without a differential partner act as parameters
/// (e.g. source coordinates on a product chart, where d differentiates only
/// the target directions).
class SuperForm {
public:
    SuperForm() = default;
    explicit SuperForm(GradedPoly value);

    static SuperForm zero(const Chart& doubled) { return SuperForm(GradedPoly(doubled)); }
    static SuperForm parse(std::string_view src, const Chart& doubled);

    const GradedPoly& value() const noexcept { return value_; }
    const Chart& chart() const noexcept { return value_.chart(); }
    bool is_zero() const noexcept { return value_.is_zero(); }

    /// Form degrees (dx-counts) present among the terms.
    std::set<unsigned> degrees() const;
    /// The single degree if all terms share one; zero forms report nullopt.
    std::optional<unsigned> pure_degree() const;

    SuperForm operator-() const { return SuperForm(-value_); }
    friend SuperForm operator+(const SuperForm& a, const SuperForm& b) { return SuperForm(a.value_ + b.value_); }
    friend SuperForm operator-(const SuperForm& a, const SuperForm& b) { return SuperForm(a.value_ - b.value_); }
    friend SuperForm operator*(const Rational& c, const SuperForm& a) { return SuperForm(c * a.value_); }
    bool operator==(const SuperForm& other) const { return value_ == other.value_; }
    bool operator!=(const SuperForm& other) const { return !(*this == other); }

private:
    GradedPoly value_;
};

/// Number of differential coordinates in a monomial.
unsigned form_degree(const Chart& chart, const Monomial& m);

/// Lifts a base-chart function to the doubled chart.
SuperForm function_form(const GradedPoly& f, const Chart& doubled);

/// The odd field sum_a dx^a d/dx^a over the paired coordinates of `doubled`.
VectorField de_rham_field(const Chart& doubled);
/// i_X as an operator field on `doubled`: d/d(dx^a) gets (-1)^{X~} X^a.
/// Components of X along unpaired coordinates must vanish.
VectorField contraction_field(const VectorField& X, const Chart& doubled);
/// L_X = [d, i_X] as an operator field on `doubled`.
VectorField lie_derivative_field(const VectorField& X, const Chart& doubled);

SuperForm exterior_derivative(const SuperForm& alpha);
SuperForm interior_product(const VectorField& X, const SuperForm& alpha);
SuperForm lie_derivative(const VectorField& X, const SuperForm& alpha);

/// Poincare homotopy primitive h(alpha) with d(h(alpha)) = alpha for closed
/// alpha. On a term of total weight w (polynomial degree in the paired base
/// coordinates plus form degree) h = i_E / w with E the Euler field.
/// Every term must have form degree >= min_degree >= 1.
SuperForm d_inverse(const SuperForm& alpha, unsigned min_degree = 1);
/// The homotopy operator itself, without the closedness check.
SuperForm homotopy_operator(const SuperForm& alpha);

/// Coefficient f of dx in alpha = f * dx + ..., restricted to the terms
/// linear in differentials and containing exactly dx; lives on the base chart.
GradedPoly differential_coefficient(const GradedPoly& alpha, std::size_t differential);

/// Source density rho * Dxi on a purely odd chart.
struct BerezinVolume {
    Chart source;
    GradedPoly density;

    BerezinVolume(Chart source_chart, GradedPoly rho);
    std::span<const std::size_t> odd_coordinates() const { return all_; }

private:
    std::vector<std::size_t> all_;
};

/// Integral of rho * Q(f) vanishes for every basis monomial f of the odd chart.
bool volume_invariant(const VectorField& Q, const BerezinVolume& vol);

/// All 2^q monomials of a purely odd chart.
std::vector<GradedPoly> odd_function_basis(const Chart& chart);

}  // namespace aksz
