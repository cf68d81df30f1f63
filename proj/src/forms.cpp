#include "aksz/forms.hpp"

#include "aksz/parse.hpp"

namespace aksz {

SuperForm::SuperForm(GradedPoly value) : value_(std::move(value)) {
    if (!value_.chart().has_differentials()) {
        throw Error(ErrorKind::invalid_argument, "form must live on a chart with antitangent coordinates");
    }
}

SuperForm SuperForm::parse(std::string_view src, const Chart& doubled) {
    return SuperForm(parse_expression(src, doubled));
}

unsigned form_degree(const Chart& chart, const Monomial& m) {
    unsigned d = 0;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] && chart.is_differential(i)) d += m[i];
    }
    return d;
}

std::set<unsigned> SuperForm::degrees() const {
    std::set<unsigned> out;
    for (const auto& [m, c] : value_.terms()) out.insert(form_degree(chart(), m));
    return out;
}

std::optional<unsigned> SuperForm::pure_degree() const {
    auto ds = degrees();
    if (ds.size() != 1) return std::nullopt;
    return *ds.begin();
}

SuperForm function_form(const GradedPoly& f, const Chart& doubled) {
    return SuperForm(transfer(f, doubled));
}

VectorField de_rham_field(const Chart& doubled) {
    std::vector<GradedPoly> comps(doubled.size(), GradedPoly(doubled));
    for (std::size_t i = 0; i < doubled.size(); ++i) {
        if (auto d = doubled.differential_of(i)) comps[i] = GradedPoly::variable(doubled, *d);
    }
    return VectorField(doubled, Parity::odd, std::move(comps));
}

VectorField contraction_field(const VectorField& X, const Chart& doubled) {
    std::vector<GradedPoly> comps(doubled.size(), GradedPoly(doubled));
    const Rational sign = is_odd(X.parity()) ? -1 : 1;
    for (std::size_t i = 0; i < X.size(); ++i) {
        const GradedPoly& c = X.component(i);
        if (c.is_zero()) continue;
        const std::size_t j = doubled.index_of(X.chart()[i].name);
        auto d = doubled.differential_of(j);
        if (!d) {
            throw Error(ErrorKind::invalid_argument,
                        "field has a component along '" + X.chart()[i].name + "', which has no differential");
        }
        comps[*d] = sign * transfer(c, doubled);
    }
    return VectorField(doubled, flip(X.parity()), std::move(comps));
}

VectorField lie_derivative_field(const VectorField& X, const Chart& doubled) {
    return lie_bracket(de_rham_field(doubled), contraction_field(X, doubled));
}

SuperForm exterior_derivative(const SuperForm& alpha) {
    return SuperForm(apply_field(de_rham_field(alpha.chart()), alpha.value()));
}

SuperForm interior_product(const VectorField& X, const SuperForm& alpha) {
    return SuperForm(apply_field(contraction_field(X, alpha.chart()), alpha.value()));
}

SuperForm lie_derivative(const VectorField& X, const SuperForm& alpha) {
    return SuperForm(apply_field(lie_derivative_field(X, alpha.chart()), alpha.value()));
}

SuperForm homotopy_operator(const SuperForm& alpha) {
    const Chart& chart = alpha.chart();
    std::vector<std::pair<std::size_t, std::size_t>> pairs;  // (x, dx)
    for (std::size_t i = 0; i < chart.size(); ++i) {
        if (auto d = chart.differential_of(i)) pairs.emplace_back(i, *d);
    }
    GradedPoly out(chart);
    for (const auto& [m, c] : alpha.value().terms()) {
        unsigned weight = 0;
        for (const auto& [x, dx] : pairs) weight += m[x] + m[dx];
        if (weight == 0) continue;
        GradedPoly t = GradedPoly::term(chart, m, c / Rational(weight));
        for (const auto& [x, dx] : pairs) {
            if (m[dx] == 0) continue;
            out += GradedPoly::variable(chart, x) * left_derivative(t, dx);
        }
    }
    return SuperForm(std::move(out));
}

SuperForm d_inverse(const SuperForm& alpha, unsigned min_degree) {
    if (min_degree < 1) throw Error(ErrorKind::invalid_argument, "min_degree must be at least 1");
    for (unsigned d : alpha.degrees()) {
        if (d == 0) throw Error(ErrorKind::degree_zero, "no primitive is sought for degree-0 terms");
        if (d < min_degree) {
            throw Error(ErrorKind::invalid_argument,
                        "form has a term of degree " + std::to_string(d) + " below " + std::to_string(min_degree));
        }
    }
    SuperForm dalpha = exterior_derivative(alpha);
    if (!dalpha.is_zero()) throw Error(ErrorKind::not_closed, "form is not closed: d = " + print_poly(dalpha.value()));
    return homotopy_operator(alpha);
}

GradedPoly differential_coefficient(const GradedPoly& alpha, std::size_t differential) {
    const Chart& chart = alpha.chart();
    if (!chart.is_differential(differential)) {
        throw Error(ErrorKind::invalid_argument, "'" + chart[differential].name + "' is not a differential");
    }
    const Chart base = chart.base();
    GradedPoly out(base);
    for (const auto& [m, c] : alpha.terms()) {
        if (m[differential] != 1 || form_degree(chart, m) != 1) continue;
        Monomial r(m.begin(), m.begin() + static_cast<std::ptrdiff_t>(base.size()));
        out.add_term(r, c);
    }
    return out;
}

BerezinVolume::BerezinVolume(Chart source_chart, GradedPoly rho)
    : source(std::move(source_chart)), density(std::move(rho)) {
    if (density.chart() != source) throw Error(ErrorKind::mixed_charts, "density is not on the source chart");
    for (std::size_t i = 0; i < source.size(); ++i) {
        if (!is_odd(source[i].parity)) {
            throw Error(ErrorKind::invalid_argument, "Berezin volume needs a purely odd source chart");
        }
        all_.push_back(i);
    }
    if (!is_homogeneous(density)) {
        throw Error(ErrorKind::inhomogeneous_parity, "volume density must be homogeneous");
    }
}

std::vector<GradedPoly> odd_function_basis(const Chart& chart) {
    const std::size_t n = chart.size();
    if (n > 16) throw Error(ErrorKind::invalid_argument, "odd chart too large for basis enumeration");
    std::vector<GradedPoly> out;
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
        Monomial m(n, 0);
        for (std::size_t i = 0; i < n; ++i) m[i] = (mask >> i) & 1U;
        out.push_back(GradedPoly::term(chart, m, 1));
    }
    return out;
}

bool volume_invariant(const VectorField& Q, const BerezinVolume& vol) {
    if (Q.chart() != vol.source) throw Error(ErrorKind::mixed_charts, "field is not on the volume's chart");
    for (const auto& f : odd_function_basis(vol.source)) {
        if (!berezin_integral(vol.density * apply_field(Q, f), vol.odd_coordinates()).is_zero()) return false;
    }
    return true;
}

}  // namespace aksz
