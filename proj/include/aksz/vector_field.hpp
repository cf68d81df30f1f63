#pragma once

#include <map>
#include <string>
#include <vector>

#include "aksz/poly.hpp"

namespace aksz {

/// Graded derivation sum_c X^c d/dc acting from the left. The component for
/// coordinate c has parity parity() + parity(c) (or vanishes).
class VectorField {
public:
    VectorField() = default;
    VectorField(Chart chart, Parity parity);
    VectorField(Chart chart, Parity parity, std::vector<GradedPoly> components);

    /// Components keyed by coordinate name; unlisted coordinates get zero.
    static VectorField from_table(const Chart& chart, Parity parity,
                                  const std::map<std::string, GradedPoly>& table);

    const Chart& chart() const noexcept { return chart_; }
    Parity parity() const noexcept { return parity_; }
    std::size_t size() const noexcept { return components_.size(); }
    const GradedPoly& component(std::size_t i) const { return components_.at(i); }
    const GradedPoly& component(std::string_view name) const;
    const std::vector<GradedPoly>& components() const noexcept { return components_; }
    bool is_zero() const;

    VectorField operator-() const;
    VectorField& operator+=(const VectorField& other);
    VectorField& operator-=(const VectorField& other);
    VectorField& operator*=(const Rational& c);
    friend VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
    friend VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }
    friend VectorField operator*(const Rational& c, VectorField a) { return a *= c; }

    /// Zero fields compare equal regardless of declared parity.
    bool operator==(const VectorField& other) const;
    bool operator!=(const VectorField& other) const { return !(*this == other); }

private:
    Chart chart_;
    Parity parity_ = Parity::even;
    std::vector<GradedPoly> components_;
};

/// X(f) = sum_c X^c * left_derivative(f, c).
GradedPoly apply_field(const VectorField& X, const GradedPoly& f);

/// Graded commutator X o Y - (-1)^{XY} Y o X, returned as a field.
VectorField lie_bracket(const VectorField& X, const VectorField& Y);

/// Odd and [Q, Q] = 0.
bool is_homological(const VectorField& Q);

/// Re-expresses X on a chart containing all of X's coordinates by name;
/// components along new coordinates are zero.
VectorField embed(const VectorField& X, const Chart& target);

/// Parity of a field given by its components; nullopt for the zero field.
/// Throws parity_mismatch if the components disagree.
std::optional<Parity> infer_field_parity(const Chart& chart, const std::map<std::string, GradedPoly>& table);

/// "coordinate: component" pairs of the nonzero components, joined by "; ".
std::string print_field(const VectorField& X);

}  // namespace aksz
