#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "aksz/symplectic.hpp"

namespace aksz {

/// The source R^{0|q} with coordinates xi1..xiq and a Berezin density rho.
class SourceOddLine {
public:
    explicit SourceOddLine(unsigned q, std::string_view prefix = "xi");
    SourceOddLine(unsigned q, std::string_view prefix, std::string_view rho);
    SourceOddLine(Chart chart, GradedPoly rho);

    unsigned q() const noexcept { return static_cast<unsigned>(chart_.size()); }
    const Chart& chart() const noexcept { return chart_; }
    const GradedPoly& density() const noexcept { return volume_.density; }
    const BerezinVolume& volume() const noexcept { return volume_; }

    static Chart make_chart(unsigned q, std::string_view prefix = "xi");

private:
    Chart chart_;
    BerezinVolume volume_;
};

/// Finite-dimensional model of Map(R^{0|q}, N). A map is the universal
/// expansion phi^i(xi) = sum_I phi^i_I xi^I (coefficient on the left, xi^I the
/// increasing product) with parity(phi^i_I) = parity(y^i) + |I|. Field
/// coordinates are named "<y>_<I>" with I written as its digits ("0" for the
/// empty set); variations carry a "d" prefix.
///
/// Auxiliary charts:
///   fields      (phi)               mapping-space base
///   doubled     (phi, dphi)         forms on the mapping space
///   expansion   (phi, dphi, xi)     where universal maps are expanded
///   target_forms (y, dy)
///   product     (xi, y) and product_forms (xi, y, dy) for objects on M x N
class MappingChart {
public:
    MappingChart(SourceOddLine source, Chart target);

    const SourceOddLine& source() const noexcept { return source_; }
    unsigned q() const noexcept { return source_.q(); }
    const Chart& target() const noexcept { return target_; }
    const Chart& fields() const noexcept { return fields_; }
    const Chart& doubled() const noexcept { return doubled_; }
    const Chart& expansion() const noexcept { return expansion_; }
    const Chart& target_forms() const noexcept { return target_forms_; }
    const Chart& product() const noexcept { return product_; }
    const Chart& product_forms() const noexcept { return product_forms_; }

    /// Subsets of {1..q} as bitmasks, ordered by size then lexicographically.
    const std::vector<unsigned>& subsets() const noexcept { return subsets_; }
    std::size_t field_index(std::size_t target_coord, std::size_t subset_pos) const;
    static std::string subset_label(unsigned mask, unsigned q);

    /// phi^i(xi) and dphi^i(xi) on the expansion chart.
    const GradedPoly& universal_map(std::size_t i) const { return maps_.at(i); }
    const GradedPoly& universal_variation(std::size_t i) const { return variations_.at(i); }

    /// Pulls a function of (xi, y) or (xi, y, dy) (also accepted: (y), (y, dy),
    /// (xi)) back along the universal map to the expansion chart.
    GradedPoly along_map(const GradedPoly& f) const;
    /// Berezin integral over xi of an expansion-chart polynomial, returned on
    /// the doubled mapping chart.
    GradedPoly integrate(const GradedPoly& integrand) const;

    /// Coefficients K^i_I of tangent functions K^i(xi) = sum_I K^i_I xi^I,
    /// assembled as a field on the mapping chart and scaled by `sign`.
    VectorField field_from_tangent(const std::vector<GradedPoly>& tangent, Parity parity, int sign) const;

    /// dphi o X as tangent functions K^i = X^a d phi^i / d xi^a (no sign factor).
    std::vector<GradedPoly> pullback_tangent(const VectorField& X) const;
    /// Y o phi as tangent functions (no sign factor).
    std::vector<GradedPoly> pushforward_tangent(const VectorField& Y) const;

private:
    SourceOddLine source_;
    Chart target_;
    std::vector<unsigned> subsets_;
    Chart fields_, doubled_, expansion_, target_forms_, product_, product_forms_;
    std::vector<GradedPoly> maps_, variations_;
    std::vector<std::size_t> xi_in_expansion_;
};

MappingChart build_mapping_chart(const SourceOddLine& source, const Chart& target);

/// Y_* with components (-1)^{q Y~} [Y^i(phi(xi))]_I.
VectorField pushforward_field(const VectorField& Y, const MappingChart& mc);
/// X^* with components (-1)^{q X~} [X^a d_a phi^i(xi)]_I.
VectorField pullback_field(const VectorField& X, const MappingChart& mc);
/// d(X1, X2) = X2_* - X1^*.
VectorField difference_construction(const VectorField& X1, const VectorField& X2, const MappingChart& mc);

/// Target-closed 2-form on M x N (product_forms chart), standing for
/// Dxi (x) omegabar(xi, y, dy).
class TwoFormField {
public:
    TwoFormField(const MappingChart& mc, SuperForm value);
    /// rho(xi) * omega(y, dy).
    static TwoFormField factorized(const MappingChart& mc, const SuperForm& omega);

    const SuperForm& form() const noexcept { return form_; }

private:
    SuperForm form_;
};

SuperForm aksz_form(const TwoFormField& omegabar, const MappingChart& mc);

/// Source data for the factorized action S = int Dxi rho (Q1^a d_a phi^i lambda_i(phi) - H(phi)).
struct FactorizedData {
    SuperForm omega;                    // on target_forms
    std::optional<SuperForm> lambda;    // primitive of omega; computed when absent
    std::optional<GradedPoly> H;        // on target; zero when absent
};

struct GeneralData {
    TwoFormField omegabar;
    SuperForm lambdabar;      // d_2 lambdabar = omegabar, on product_forms
    GradedPoly U;             // on product
};

GradedPoly aksz_action(const VectorField& Q1, const FactorizedData& data, const MappingChart& mc);
GradedPoly aksz_action(const VectorField& X1, const GeneralData& data, const MappingChart& mc);

/// (-1)^{X~+1} sum_a d/dxi^a (X^a F): the Lie derivative of F Dxi.
GradedPoly density_lie_derivative(const VectorField& X1, const GradedPoly& F, const MappingChart& mc);
/// (L_{X1} + L_{X2}) omegabar.
SuperForm integrability_residual(const VectorField& X1, const VectorField& X2, const TwoFormField& omegabar,
                                 const MappingChart& mc);

class IntegrabilityViolation : public Error {
public:
    explicit IntegrabilityViolation(SuperForm residual);
    const SuperForm& residual() const noexcept { return residual_; }

private:
    SuperForm residual_;
};

/// Potential U with d_2 U = i_{X2} omegabar - sum_a d/dxi^a (X1^a lambdabar).
/// Throws IntegrabilityViolation when that 1-form is not d_2-closed.
GradedPoly solve_potential(const VectorField& X1, const VectorField& X2, const TwoFormField& omegabar,
                           const SuperForm& lambdabar, const MappingChart& mc);

struct AkszReport {
    SuperForm Omega;
    GradedPoly S;
    GradedPoly U;
    SuperForm lambdabar;
    VectorField X12;
    VectorField XS;
    int global_sign = 0;
    MasterCheck master;
    std::map<std::string, bool> checks;

    bool all_passed() const;
};

AkszReport gradient_form_verify(const VectorField& X1, const VectorField& X2, const TwoFormField& omegabar,
                                const MappingChart& mc, std::optional<SuperForm> lambdabar = std::nullopt);

/// A parity-respecting polynomial map: one component (over `from`) per
/// coordinate of `to`.
struct PolyMap {
    Chart from;
    Chart to;
    std::vector<GradedPoly> components;

    PolyMap(Chart from_chart, Chart to_chart, std::vector<GradedPoly> comps);
    static PolyMap identity(const Chart& chart);
};

/// psi o phi.
PolyMap compose(const PolyMap& psi, const PolyMap& phi);
/// Components of X_to o phi - dphi o X_from, over phi.from.
std::vector<GradedPoly> difference_along(const VectorField& X_from, const VectorField& X_to, const PolyMap& phi);
/// (dpsi o V)^k = sum_j V^j (d_j psi^k)(phi) for a tangent vector V along phi.
std::vector<GradedPoly> push_tangent(const PolyMap& psi, const PolyMap& phi, const std::vector<GradedPoly>& V);

struct CompositionCheck {
    std::vector<GradedPoly> lhs;
    std::vector<GradedPoly> rhs;
    bool equal = false;
};

/// d(X1,X3)[psi o phi] against d(X2,X3)[psi] o phi + dpsi o d(X1,X2)[phi].
CompositionCheck compose_check(const PolyMap& phi, const PolyMap& psi, const VectorField& X1,
                               const VectorField& X2, const VectorField& X3);

}  // namespace aksz
