#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "aksz/chart.hpp"
#include "aksz/errors.hpp"

namespace aksz {

using Rational = mpq_class;

/// Exponent vector indexed by chart position. Odd coordinates carry 0 or 1.
using Monomial = std::vector<std::uint16_t>;

/// Descending lexicographic order on exponent vectors: the print order, with
/// the constant monomial last.
struct MonomialOrder {
    bool operator()(const Monomial& a, const Monomial& b) const { return b < a; }
};

/// Polynomial in graded coordinates with exact rational coefficients.
/// Each stored monomial is the ordered product of its coordinates in chart
/// order; Koszul signs live in the coefficient. Zero coefficients are never
/// stored, so equality is table equality.
class GradedPoly {
public:
    using TermMap = std::map<Monomial, Rational, MonomialOrder>;

    GradedPoly() = default;
    explicit GradedPoly(Chart chart) : chart_(std::move(chart)) {}

    static GradedPoly constant(const Chart& chart, const Rational& value);
    static GradedPoly variable(const Chart& chart, std::size_t index);
    static GradedPoly variable(const Chart& chart, std::string_view name);
    /// c * m, where m must respect the nilpotency of odd coordinates.
    static GradedPoly term(const Chart& chart, Monomial m, const Rational& c);

    const Chart& chart() const noexcept { return chart_; }
    const TermMap& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    std::size_t size() const noexcept { return terms_.size(); }

    /// Coefficient of the constant monomial.
    Rational constant_term() const;
    bool is_constant() const;

    GradedPoly operator-() const;
    GradedPoly& operator+=(const GradedPoly& other);
    GradedPoly& operator-=(const GradedPoly& other);
    GradedPoly& operator*=(const Rational& c);

    friend GradedPoly operator+(GradedPoly a, const GradedPoly& b) { return a += b; }
    friend GradedPoly operator-(GradedPoly a, const GradedPoly& b) { return a -= b; }
    friend GradedPoly operator*(GradedPoly a, const Rational& c) { return a *= c; }
    friend GradedPoly operator*(const Rational& c, GradedPoly a) { return a *= c; }
    friend GradedPoly operator*(const GradedPoly& a, const GradedPoly& b);

    bool operator==(const GradedPoly& other) const;
    bool operator!=(const GradedPoly& other) const { return !(*this == other); }

    /// Adds c * m into the table (m already canonical).
    void add_term(const Monomial& m, const Rational& c);

private:
    Chart chart_;
    TermMap terms_;
};

GradedPoly mul(const GradedPoly& p, const GradedPoly& q);

/// Parity of a single canonical monomial on its chart.
Parity monomial_parity(const Chart& chart, const Monomial& m);

/// Common parity of all terms; zero is even. Throws inhomogeneous_parity.
Parity parity_of(const GradedPoly& p);
/// True iff all terms share one parity.
bool is_homogeneous(const GradedPoly& p);

/// Graded Leibniz derivative acting from the left.
GradedPoly left_derivative(const GradedPoly& p, std::size_t coordinate);
GradedPoly left_derivative(const GradedPoly& p, std::string_view name);

/// Simultaneous substitution. Each bound coordinate of p's chart is replaced by
/// a polynomial over `target`; unbound coordinates must exist by name in
/// `target` and are carried over. A graded algebra homomorphism.
using Binding = std::map<std::size_t, GradedPoly>;
GradedPoly substitute(const GradedPoly& p, const Binding& binding, const Chart& target);
/// Same-chart form.
GradedPoly substitute(const GradedPoly& p, const Binding& binding);

/// Re-expresses p on another chart by coordinate name.
GradedPoly transfer(const GradedPoly& p, const Chart& target);

/// Top-coefficient extraction: integral of xi^{l1}...xi^{lq} * G equals G.
/// Equivalent to applying the left derivatives for l1, ..., lq in that order.
GradedPoly berezin_integral(const GradedPoly& p, std::span<const std::size_t> odd_vars);

/// Sum of exponents over the selected coordinates.
unsigned degree_in(const Monomial& m, std::span<const std::size_t> coords);

/// Terms of p whose monomial satisfies pred.
template <class Pred>
GradedPoly filter_terms(const GradedPoly& p, Pred pred) {
    GradedPoly out(p.chart());
    for (const auto& [m, c] : p.terms()) {
        if (pred(m)) out.add_term(m, c);
    }
    return out;
}

}  // namespace aksz
