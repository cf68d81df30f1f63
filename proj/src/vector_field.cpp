#include "aksz/vector_field.hpp"

#include <sstream>

#include "aksz/parse.hpp"

namespace aksz {

namespace {

void check_component(const Chart& chart, Parity field, std::size_t i, const GradedPoly& c) {
    if (c.chart() != chart) {
        throw Error(ErrorKind::mixed_charts, "component for '" + chart[i].name + "' is on another chart");
    }
    if (c.is_zero()) return;
    if (!is_homogeneous(c) || parity_of(c) != field + chart[i].parity) {
        throw Error(ErrorKind::parity_mismatch, "component for '" + chart[i].name +
                                                    "' does not have parity " +
                                                    to_string(field + chart[i].parity));
    }
}

}  // namespace

VectorField::VectorField(Chart chart, Parity parity)
    : chart_(std::move(chart)), parity_(parity), components_(chart_.size(), GradedPoly(chart_)) {}

VectorField::VectorField(Chart chart, Parity parity, std::vector<GradedPoly> components)
    : chart_(std::move(chart)), parity_(parity), components_(std::move(components)) {
    if (components_.size() != chart_.size()) {
        throw Error(ErrorKind::invalid_argument, "vector field needs one component per coordinate");
    }
    for (std::size_t i = 0; i < components_.size(); ++i) check_component(chart_, parity_, i, components_[i]);
}

VectorField VectorField::from_table(const Chart& chart, Parity parity,
                                    const std::map<std::string, GradedPoly>& table) {
    std::vector<GradedPoly> comps(chart.size(), GradedPoly(chart));
    for (const auto& [name, c] : table) comps[chart.index_of(name)] = c;
    return VectorField(chart, parity, std::move(comps));
}

const GradedPoly& VectorField::component(std::string_view name) const {
    return components_.at(chart_.index_of(name));
}

bool VectorField::is_zero() const {
    for (const auto& c : components_) {
        if (!c.is_zero()) return false;
    }
    return true;
}

VectorField VectorField::operator-() const {
    VectorField out = *this;
    for (auto& c : out.components_) c = -c;
    return out;
}

VectorField& VectorField::operator+=(const VectorField& other) {
    if (chart_ != other.chart_) throw Error(ErrorKind::mixed_charts, "fields on different charts");
    if (other.is_zero()) return *this;
    if (is_zero()) {
        *this = other;
        return *this;
    }
    if (parity_ != other.parity_) throw Error(ErrorKind::parity_mismatch, "adding fields of different parity");
    for (std::size_t i = 0; i < components_.size(); ++i) components_[i] += other.components_[i];
    return *this;
}

VectorField& VectorField::operator-=(const VectorField& other) { return *this += -other; }

VectorField& VectorField::operator*=(const Rational& c) {
    for (auto& comp : components_) comp *= c;
    return *this;
}

bool VectorField::operator==(const VectorField& other) const {
    if (chart_ != other.chart_) return false;
    if (is_zero() && other.is_zero()) return true;
    return parity_ == other.parity_ && components_ == other.components_;
}

GradedPoly apply_field(const VectorField& X, const GradedPoly& f) {
    if (X.chart() != f.chart()) throw Error(ErrorKind::mixed_charts, "field and function on different charts");
    GradedPoly out(f.chart());
    for (std::size_t c = 0; c < X.size(); ++c) {
        const GradedPoly& comp = X.component(c);
        if (comp.is_zero()) continue;
        GradedPoly df = left_derivative(f, c);
        if (df.is_zero()) continue;
        out += comp * df;
    }
    return out;
}

VectorField lie_bracket(const VectorField& X, const VectorField& Y) {
    if (X.chart() != Y.chart()) throw Error(ErrorKind::mixed_charts, "bracket of fields on different charts");
    const Chart& chart = X.chart();
    const Parity p = X.parity() + Y.parity();
    const int sign = koszul(X.parity(), Y.parity());
    std::vector<GradedPoly> comps;
    comps.reserve(chart.size());
    for (std::size_t c = 0; c < chart.size(); ++c) {
        GradedPoly v = apply_field(X, Y.component(c));
        GradedPoly w = apply_field(Y, X.component(c));
        if (sign > 0) {
            v -= w;
        } else {
            v += w;
        }
        comps.push_back(std::move(v));
    }
    return VectorField(chart, p, std::move(comps));
}

bool is_homological(const VectorField& Q) {
    if (!is_odd(Q.parity())) return Q.is_zero();
    return lie_bracket(Q, Q).is_zero();
}

VectorField embed(const VectorField& X, const Chart& target) {
    if (X.chart() == target) return X;
    std::vector<GradedPoly> comps(target.size(), GradedPoly(target));
    for (std::size_t i = 0; i < X.size(); ++i) {
        const auto& c = X.component(i);
        if (c.is_zero()) continue;
        comps[target.index_of(X.chart()[i].name)] = transfer(c, target);
    }
    return VectorField(target, X.parity(), std::move(comps));
}

std::optional<Parity> infer_field_parity(const Chart& chart, const std::map<std::string, GradedPoly>& table) {
    std::optional<Parity> p;
    for (const auto& [name, c] : table) {
        if (c.is_zero()) continue;
        if (!is_homogeneous(c)) {
            throw Error(ErrorKind::parity_mismatch, "component for '" + name + "' is inhomogeneous");
        }
        const Parity here = parity_of(c) + chart[chart.index_of(name)].parity;
        if (p && *p != here) {
            throw Error(ErrorKind::parity_mismatch, "components imply different field parities");
        }
        p = here;
    }
    return p;
}

std::string print_field(const VectorField& X) {
    std::ostringstream os;
    bool any = false;
    for (std::size_t i = 0; i < X.size(); ++i) {
        if (X.component(i).is_zero()) continue;
        os << (any ? "; " : "") << X.chart()[i].name << ": " << print_poly(X.component(i));
        any = true;
    }
    return any ? os.str() : "0";
}

}  // namespace aksz
