#include "aksz/mapping_space.hpp"

#include <algorithm>
#include <bit>

#include "aksz/parse.hpp"

namespace aksz {

namespace {

Rational parity_sign(unsigned q, Parity p) { return (q % 2 == 1 && is_odd(p)) ? -1 : 1; }

std::vector<Coordinate> coordinates_of(const Chart& c) { return c.coordinates(); }

}  // namespace

Chart SourceOddLine::make_chart(unsigned q, std::string_view prefix) {
    std::vector<Coordinate> coords;
    for (unsigned a = 1; a <= q; ++a) {
        coords.push_back({std::string(prefix) + std::to_string(a), Parity::odd, Role::source});
    }
    return Chart(std::move(coords));
}

SourceOddLine::SourceOddLine(unsigned q, std::string_view prefix)
    : SourceOddLine(make_chart(q, prefix), GradedPoly::constant(make_chart(q, prefix), 1)) {}

SourceOddLine::SourceOddLine(unsigned q, std::string_view prefix, std::string_view rho)
    : SourceOddLine(make_chart(q, prefix), parse_expression(rho, make_chart(q, prefix))) {}

SourceOddLine::SourceOddLine(Chart chart, GradedPoly rho)
    : chart_(chart), volume_(std::move(chart), transfer(rho, chart_)) {
    if (chart_.size() == 0) throw Error(ErrorKind::invalid_argument, "source dimension q must be at least 1");
    if (chart_.size() > 9) throw Error(ErrorKind::invalid_argument, "source dimension q must be at most 9");
}

MappingChart::MappingChart(SourceOddLine source, Chart target)
    : source_(std::move(source)), target_(std::move(target)) {
    if (target_.has_differentials()) {
        throw Error(ErrorKind::invalid_argument, "target chart must not carry differentials");
    }
    const unsigned q = source_.q();
    const std::size_t n = target_.size();
    for (const auto& c : target_.coordinates()) {
        if (source_.chart().find(c.name)) {
            throw Error(ErrorKind::invalid_argument, "target coordinate '" + c.name + "' clashes with the source");
        }
    }

    for (unsigned size = 0; size <= q; ++size) {
        std::vector<std::vector<unsigned>> lists;
        for (unsigned mask = 0; mask < (1U << q); ++mask) {
            if (static_cast<unsigned>(std::popcount(mask)) != size) continue;
            std::vector<unsigned> elems;
            for (unsigned a = 0; a < q; ++a) {
                if (mask & (1U << a)) elems.push_back(a);
            }
            lists.push_back(std::move(elems));
        }
        std::sort(lists.begin(), lists.end());
        for (const auto& elems : lists) {
            unsigned mask = 0;
            for (unsigned a : elems) mask |= 1U << a;
            subsets_.push_back(mask);
        }
    }

    std::vector<Coordinate> fields;
    for (unsigned mask : subsets_) {
        for (std::size_t i = 0; i < n; ++i) {
            const Parity p = target_[i].parity + parity_of_count(static_cast<std::size_t>(std::popcount(mask)));
            fields.push_back({target_[i].name + "_" + subset_label(mask, q), p, Role::mapping});
        }
    }
    fields_ = Chart(fields);
    doubled_ = fields_.doubled("d", Role::variation);

    std::vector<Coordinate> expansion = coordinates_of(doubled_);
    for (const auto& c : source_.chart().coordinates()) {
        xi_in_expansion_.push_back(expansion.size());
        expansion.push_back(c);
    }
    expansion_ = Chart(expansion);

    target_forms_ = target_.doubled();
    std::vector<Coordinate> product = coordinates_of(source_.chart());
    std::vector<std::size_t> target_part;
    for (const auto& c : target_.coordinates()) {
        target_part.push_back(product.size());
        product.push_back(c);
    }
    product_ = Chart(product);
    product_forms_ = product_.with_differentials(target_part);

    const std::size_t nf = fields_.size();
    for (std::size_t i = 0; i < n; ++i) {
        GradedPoly map(expansion_), var(expansion_);
        for (std::size_t pos = 0; pos < subsets_.size(); ++pos) {
            Monomial m(expansion_.size(), 0), v(expansion_.size(), 0);
            for (unsigned a = 0; a < q; ++a) {
                if (subsets_[pos] & (1U << a)) m[xi_in_expansion_[a]] = v[xi_in_expansion_[a]] = 1;
            }
            m[field_index(i, pos)] = 1;
            v[nf + field_index(i, pos)] = 1;
            map.add_term(m, 1);
            var.add_term(v, 1);
        }
        maps_.push_back(std::move(map));
        variations_.push_back(std::move(var));
    }
}

MappingChart build_mapping_chart(const SourceOddLine& source, const Chart& target) {
    return MappingChart(source, target);
}

std::size_t MappingChart::field_index(std::size_t target_coord, std::size_t subset_pos) const {
    return subset_pos * target_.size() + target_coord;
}

std::string MappingChart::subset_label(unsigned mask, unsigned q) {
    if (mask == 0) return "0";
    std::string out;
    for (unsigned a = 0; a < q; ++a) {
        if (mask & (1U << a)) out += std::to_string(a + 1);
    }
    return out;
}

GradedPoly MappingChart::along_map(const GradedPoly& f) const {
    const Chart& chart = f.chart();
    Binding binding;
    for (std::size_t k = 0; k < chart.size(); ++k) {
        const std::string& name = chart[k].name;
        if (auto s = source_.chart().find(name)) {
            binding.emplace(k, GradedPoly::variable(expansion_, xi_in_expansion_[*s]));
        } else if (auto t = target_forms_.find(name)) {
            if (*t < target_.size()) {
                binding.emplace(k, maps_[*t]);
            } else {
                binding.emplace(k, variations_[*target_forms_.base_of(*t)]);
            }
        } else {
            throw Error(ErrorKind::unknown_identifier, "'" + name + "' is neither a source nor a target coordinate");
        }
    }
    return substitute(f, binding, expansion_);
}

GradedPoly MappingChart::integrate(const GradedPoly& integrand) const {
    if (integrand.chart() != expansion_) throw Error(ErrorKind::mixed_charts, "integrand is not on the expansion chart");
    return transfer(berezin_integral(integrand, xi_in_expansion_), doubled_);
}

VectorField MappingChart::field_from_tangent(const std::vector<GradedPoly>& tangent, Parity parity, int sign) const {
    const std::size_t n = target_.size();
    const std::size_t nf = fields_.size();
    if (tangent.size() != n) throw Error(ErrorKind::invalid_argument, "one tangent function per target coordinate");
    std::vector<std::size_t> position(std::size_t{1} << q(), 0);
    for (std::size_t pos = 0; pos < subsets_.size(); ++pos) position[subsets_[pos]] = pos;

    std::vector<GradedPoly> comps(nf, GradedPoly(fields_));
    for (std::size_t i = 0; i < n; ++i) {
        if (tangent[i].chart() != expansion_) {
            throw Error(ErrorKind::mixed_charts, "tangent function is not on the expansion chart");
        }
        for (const auto& [m, c] : tangent[i].terms()) {
            for (std::size_t k = nf; k < 2 * nf; ++k) {
                if (m[k]) throw Error(ErrorKind::invalid_argument, "tangent function depends on variations");
            }
            unsigned mask = 0;
            for (unsigned a = 0; a < q(); ++a) {
                if (m[xi_in_expansion_[a]]) mask |= 1U << a;
            }
            Monomial r(m.begin(), m.begin() + static_cast<std::ptrdiff_t>(nf));
            comps[field_index(i, position[mask])].add_term(r, sign < 0 ? Rational(-c) : c);
        }
    }
    return VectorField(fields_, parity, std::move(comps));
}

std::vector<GradedPoly> MappingChart::pullback_tangent(const VectorField& X) const {
    if (X.chart() != source_.chart()) throw Error(ErrorKind::mixed_charts, "field is not on the source chart");
    std::vector<GradedPoly> out;
    for (std::size_t i = 0; i < target_.size(); ++i) {
        GradedPoly k(expansion_);
        for (unsigned a = 0; a < q(); ++a) {
            if (X.component(a).is_zero()) continue;
            k += transfer(X.component(a), expansion_) * left_derivative(maps_[i], xi_in_expansion_[a]);
        }
        out.push_back(std::move(k));
    }
    return out;
}

std::vector<GradedPoly> MappingChart::pushforward_tangent(const VectorField& Y) const {
    if (Y.chart() != target_) throw Error(ErrorKind::mixed_charts, "field is not on the target chart");
    std::vector<GradedPoly> out;
    for (std::size_t i = 0; i < target_.size(); ++i) out.push_back(along_map(Y.component(i)));
    return out;
}

VectorField pushforward_field(const VectorField& Y, const MappingChart& mc) {
    const int s = sgn(parity_sign(mc.q(), Y.parity()));
    return mc.field_from_tangent(mc.pushforward_tangent(Y), Y.parity(), s);
}

VectorField pullback_field(const VectorField& X, const MappingChart& mc) {
    const int s = sgn(parity_sign(mc.q(), X.parity()));
    return mc.field_from_tangent(mc.pullback_tangent(X), X.parity(), s);
}

VectorField difference_construction(const VectorField& X1, const VectorField& X2, const MappingChart& mc) {
    if (X1.parity() != X2.parity() && !X1.is_zero() && !X2.is_zero()) {
        throw Error(ErrorKind::parity_mismatch, "source and target fields must share a parity");
    }
    const Parity p = X1.is_zero() ? X2.parity() : X1.parity();
    VectorField push = pushforward_field(X2, mc);
    VectorField pull = pullback_field(X1, mc);
    return VectorField(mc.fields(), p, (push - pull).components());
}

TwoFormField::TwoFormField(const MappingChart& mc, SuperForm value) : form_(transfer(value.value(), mc.product_forms())) {
    if (!form_.is_zero() && form_.pure_degree() != 2u) {
        throw Error(ErrorKind::invalid_argument, "two-form field must have form degree 2");
    }
    if (!is_homogeneous(form_.value())) {
        throw Error(ErrorKind::inhomogeneous_parity, "two-form field must have a definite parity");
    }
    if (!exterior_derivative(form_).is_zero()) {
        throw Error(ErrorKind::not_closed, "two-form field is not closed in the target directions");
    }
}

TwoFormField TwoFormField::factorized(const MappingChart& mc, const SuperForm& omega) {
    const Chart& pf = mc.product_forms();
    return TwoFormField(mc, SuperForm(transfer(mc.source().density(), pf) * transfer(omega.value(), pf)));
}

SuperForm aksz_form(const TwoFormField& omegabar, const MappingChart& mc) {
    return SuperForm(mc.integrate(mc.along_map(omegabar.form().value())));
}

namespace {

// lambda_i = d lambda / d(dy^i), on the base of lambda's chart.
std::vector<GradedPoly> one_form_components(const SuperForm& lambda, const MappingChart& mc) {
    const Chart& chart = lambda.chart();
    const Chart base = chart.base();
    std::vector<GradedPoly> out;
    for (std::size_t i = 0; i < mc.target().size(); ++i) {
        const std::size_t y = chart.index_of(mc.target()[i].name);
        out.push_back(transfer(left_derivative(lambda.value(), *chart.differential_of(y)), base));
    }
    return out;
}

}  // namespace

GradedPoly aksz_action(const VectorField& Q1, const FactorizedData& data, const MappingChart& mc) {
    const Chart& tf = mc.target_forms();
    const SuperForm omega(transfer(data.omega.value(), tf));
    SuperForm lambda;
    if (data.lambda) {
        lambda = SuperForm(transfer(data.lambda->value(), tf));
        if (exterior_derivative(lambda) != omega) {
            throw Error(ErrorKind::potential_mismatch, "d lambda does not equal omega");
        }
    } else {
        lambda = d_inverse(omega, 2);
    }
    if (!volume_invariant(Q1, mc.source().volume())) {
        throw Error(ErrorKind::volume_not_invariant, "Q1 does not preserve the Berezin volume");
    }
    GradedPoly H = data.H ? transfer(*data.H, mc.target()) : GradedPoly(mc.target());
    if (!H.is_zero()) {
        const Parity expected = Q1.parity() + parity_of(omega.value());
        if (!is_homogeneous(H) || parity_of(H) != expected) {
            throw Error(ErrorKind::parity_mismatch,
                        std::string("Hamiltonian must have parity ") + to_string(expected));
        }
    }

    const auto K = mc.pullback_tangent(Q1);
    const auto lam = one_form_components(lambda, mc);
    GradedPoly bulk = -mc.along_map(H);
    for (std::size_t i = 0; i < K.size(); ++i) {
        if (K[i].is_zero() || lam[i].is_zero()) continue;
        bulk += K[i] * mc.along_map(lam[i]);
    }
    const GradedPoly integrand = mc.along_map(mc.source().density()) * bulk;
    return transfer(mc.integrate(integrand), mc.fields());
}

GradedPoly aksz_action(const VectorField& X1, const GeneralData& data, const MappingChart& mc) {
    const SuperForm lambdabar(transfer(data.lambdabar.value(), mc.product_forms()));
    const auto K = mc.pullback_tangent(X1);
    const auto lam = one_form_components(lambdabar, mc);
    GradedPoly integrand = mc.along_map(transfer(data.U, mc.product()));
    for (std::size_t i = 0; i < K.size(); ++i) {
        if (K[i].is_zero() || lam[i].is_zero()) continue;
        integrand += K[i] * mc.along_map(lam[i]);
    }
    return transfer(mc.integrate(integrand), mc.fields());
}

namespace {

// sum_a d/dxi^a (X^a F) for F on a chart whose leading coordinates are the source.
GradedPoly source_divergence(const VectorField& X1, const GradedPoly& F, const MappingChart& mc) {
    if (X1.chart() != mc.source().chart()) throw Error(ErrorKind::mixed_charts, "field is not on the source chart");
    const Chart& chart = F.chart();
    GradedPoly out(chart);
    for (unsigned a = 0; a < mc.q(); ++a) {
        if (X1.component(a).is_zero()) continue;
        out += left_derivative(transfer(X1.component(a), chart) * F, chart.index_of(mc.source().chart()[a].name));
    }
    return out;
}

}  // namespace

GradedPoly density_lie_derivative(const VectorField& X1, const GradedPoly& F, const MappingChart& mc) {
    GradedPoly out = source_divergence(X1, F, mc);
    if (!is_odd(X1.parity())) out = -out;
    return out;
}

SuperForm integrability_residual(const VectorField& X1, const VectorField& X2, const TwoFormField& omegabar,
                                 const MappingChart& mc) {
    const SuperForm& w = omegabar.form();
    return SuperForm(density_lie_derivative(X1, w.value(), mc)) + lie_derivative(X2, w);
}

IntegrabilityViolation::IntegrabilityViolation(SuperForm residual)
    : Error(ErrorKind::integrability_violation,
            "(L_X1 + L_X2) omegabar = " + print_poly(residual.value()) + " is not zero"),
      residual_(std::move(residual)) {}

GradedPoly solve_potential(const VectorField& X1, const VectorField& X2, const TwoFormField& omegabar,
                           const SuperForm& lambdabar, const MappingChart& mc) {
    if (X1.parity() != X2.parity() && !X1.is_zero() && !X2.is_zero()) {
        throw Error(ErrorKind::parity_mismatch, "source and target fields must share a parity");
    }
    const SuperForm& w = omegabar.form();
    const SuperForm lam(transfer(lambdabar.value(), mc.product_forms()));
    if (exterior_derivative(lam) != w) {
        throw Error(ErrorKind::potential_mismatch, "d lambdabar does not equal omegabar");
    }
    const SuperForm b = interior_product(X2, w) - SuperForm(source_divergence(X1, lam.value(), mc));
    if (!exterior_derivative(b).is_zero()) throw IntegrabilityViolation(integrability_residual(X1, X2, omegabar, mc));
    if (b.is_zero()) return GradedPoly(mc.product());
    return transfer(d_inverse(b, 1).value(), mc.product());
}

bool AkszReport::all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const auto& kv) { return kv.second; });
}

AkszReport gradient_form_verify(const VectorField& X1, const VectorField& X2, const TwoFormField& omegabar,
                                const MappingChart& mc, std::optional<SuperForm> lambdabar) {
    AkszReport r;
    const SuperForm& w = omegabar.form();
    r.lambdabar = lambdabar ? SuperForm(transfer(lambdabar->value(), mc.product_forms())) : d_inverse(w, 2);
    r.U = solve_potential(X1, X2, omegabar, r.lambdabar, mc);
    r.Omega = aksz_form(omegabar, mc);
    const SymplecticStructure sym(r.Omega);
    r.S = aksz_action(X1, GeneralData{omegabar, r.lambdabar, r.U}, mc);
    r.X12 = difference_construction(X1, X2, mc);
    r.XS = hamiltonian_field(r.S, sym);
    if (r.XS == -r.X12) {
        r.global_sign = -1;
    } else if (r.XS == r.X12) {
        r.global_sign = 1;
    } else {
        throw Error(ErrorKind::no_sign_works, "X_S equals neither -d(X1,X2) nor d(X1,X2)");
    }
    r.master = master_equation(r.S, sym);
    const bool inputs_homological = is_homological(X1) && is_homological(X2);
    r.checks["omega_closed"] = exterior_derivative(r.Omega).is_zero();
    r.checks["hamiltonian_matches_difference"] = true;
    const bool master_applies = !is_odd(parity_of(r.S)) && is_odd(sym.parity());
    r.checks["master_consistent"] = !master_applies || r.master.agree();
    r.checks["homological_transfer"] =
        !inputs_homological || (r.master.passed() && (r.X12.is_zero() || is_homological(r.X12)));
    return r;
}

PolyMap::PolyMap(Chart from_chart, Chart to_chart, std::vector<GradedPoly> comps)
    : from(std::move(from_chart)), to(std::move(to_chart)), components(std::move(comps)) {
    if (components.size() != to.size()) {
        throw Error(ErrorKind::invalid_argument, "map needs one component per target coordinate");
    }
    for (std::size_t k = 0; k < to.size(); ++k) {
        components[k] = transfer(components[k], from);
        if (components[k].is_zero()) continue;
        if (!is_homogeneous(components[k]) || parity_of(components[k]) != to[k].parity) {
            throw Error(ErrorKind::parity_mismatch, "component for '" + to[k].name + "' has the wrong parity");
        }
    }
}

PolyMap PolyMap::identity(const Chart& chart) {
    std::vector<GradedPoly> comps;
    for (std::size_t k = 0; k < chart.size(); ++k) comps.push_back(GradedPoly::variable(chart, k));
    return PolyMap(chart, chart, std::move(comps));
}

namespace {

GradedPoly along(const GradedPoly& g, const PolyMap& phi) {
    Binding binding;
    for (std::size_t k = 0; k < phi.to.size(); ++k) binding.emplace(k, phi.components[k]);
    return substitute(transfer(g, phi.to), binding, phi.from);
}

}  // namespace

PolyMap compose(const PolyMap& psi, const PolyMap& phi) {
    if (psi.from != phi.to) throw Error(ErrorKind::mixed_charts, "maps are not composable");
    std::vector<GradedPoly> comps;
    for (const auto& c : psi.components) comps.push_back(along(c, phi));
    return PolyMap(phi.from, psi.to, std::move(comps));
}

std::vector<GradedPoly> difference_along(const VectorField& X_from, const VectorField& X_to, const PolyMap& phi) {
    if (X_from.chart() != phi.from || X_to.chart() != phi.to) {
        throw Error(ErrorKind::mixed_charts, "fields do not match the map's charts");
    }
    std::vector<GradedPoly> out;
    for (std::size_t k = 0; k < phi.to.size(); ++k) {
        out.push_back(along(X_to.component(k), phi) - apply_field(X_from, phi.components[k]));
    }
    return out;
}

std::vector<GradedPoly> push_tangent(const PolyMap& psi, const PolyMap& phi, const std::vector<GradedPoly>& V) {
    if (psi.from != phi.to || V.size() != phi.to.size()) {
        throw Error(ErrorKind::mixed_charts, "tangent vector does not match the maps");
    }
    std::vector<GradedPoly> out;
    for (std::size_t k = 0; k < psi.to.size(); ++k) {
        GradedPoly acc(phi.from);
        for (std::size_t j = 0; j < phi.to.size(); ++j) {
            if (V[j].is_zero()) continue;
            const GradedPoly dpsi = left_derivative(psi.components[k], j);
            if (dpsi.is_zero()) continue;
            acc += V[j] * along(dpsi, phi);
        }
        out.push_back(std::move(acc));
    }
    return out;
}

CompositionCheck compose_check(const PolyMap& phi, const PolyMap& psi, const VectorField& X1,
                               const VectorField& X2, const VectorField& X3) {
    if (X1.parity() != X2.parity() || X2.parity() != X3.parity()) {
        throw Error(ErrorKind::parity_mismatch, "the three fields must share a parity");
    }
    CompositionCheck out;
    out.lhs = difference_along(X1, X3, compose(psi, phi));
    const auto outer = difference_along(X2, X3, psi);
    const auto inner = difference_along(X1, X2, phi);
    out.rhs = push_tangent(psi, phi, inner);
    for (std::size_t k = 0; k < out.rhs.size(); ++k) out.rhs[k] += along(outer[k], phi);
    out.equal = out.lhs == out.rhs;
    return out;
}

}  // namespace aksz
