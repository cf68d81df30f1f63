#include "aksz/poly.hpp"

#include <algorithm>

namespace aksz {

namespace {

void require_same_chart(const Chart& a, const Chart& b) {
    if (a != b) throw Error(ErrorKind::mixed_charts, "polynomials live on different charts");
}

// Product of two canonical monomials. Returns the Koszul sign, or 0 when an odd
// coordinate would appear twice.
int multiply_monomials(const std::vector<unsigned char>& odd, const Monomial& a, const Monomial& b,
                       Monomial& out) {
    const std::size_t n = odd.size();
    out.resize(n);
    unsigned odd_after = 0;  // odd factors of a strictly to the right of position j
    unsigned swaps = 0;
    for (std::size_t k = n; k-- > 0;) {
        if (odd[k]) {
            if (a[k] && b[k]) return 0;
            if (b[k]) swaps += odd_after;
            if (a[k]) ++odd_after;
        }
        out[k] = static_cast<std::uint16_t>(a[k] + b[k]);
    }
    return (swaps & 1U) ? -1 : 1;
}

}  // namespace

GradedPoly GradedPoly::constant(const Chart& chart, const Rational& value) {
    GradedPoly p(chart);
    p.add_term(Monomial(chart.size(), 0), value);
    return p;
}

GradedPoly GradedPoly::variable(const Chart& chart, std::size_t index) {
    Monomial m(chart.size(), 0);
    m.at(index) = 1;
    GradedPoly p(chart);
    p.add_term(m, Rational(1));
    return p;
}

GradedPoly GradedPoly::variable(const Chart& chart, std::string_view name) {
    return variable(chart, chart.index_of(name));
}

GradedPoly GradedPoly::term(const Chart& chart, Monomial m, const Rational& c) {
    if (m.size() != chart.size()) throw Error(ErrorKind::invalid_argument, "monomial size mismatch");
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (chart.odd_mask()[i] && m[i] > 1) {
            throw Error(ErrorKind::odd_square, "odd coordinate '" + chart[i].name + "' squared");
        }
    }
    GradedPoly p(chart);
    p.add_term(m, c);
    return p;
}

void GradedPoly::add_term(const Monomial& m, const Rational& c) {
    if (sgn(c) == 0) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (sgn(it->second) == 0) terms_.erase(it);
    }
}

Rational GradedPoly::constant_term() const {
    if (terms_.empty()) return Rational(0);
    // The constant monomial sorts last.
    const auto& [m, c] = *terms_.rbegin();
    return std::all_of(m.begin(), m.end(), [](auto e) { return e == 0; }) ? c : Rational(0);
}

bool GradedPoly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && sgn(constant_term()) != 0);
}

GradedPoly GradedPoly::operator-() const {
    GradedPoly out = *this;
    for (auto& [m, c] : out.terms_) c = -c;
    return out;
}

GradedPoly& GradedPoly::operator+=(const GradedPoly& other) {
    require_same_chart(chart_, other.chart_);
    for (const auto& [m, c] : other.terms_) add_term(m, c);
    return *this;
}

GradedPoly& GradedPoly::operator-=(const GradedPoly& other) {
    require_same_chart(chart_, other.chart_);
    for (const auto& [m, c] : other.terms_) add_term(m, -c);
    return *this;
}

GradedPoly& GradedPoly::operator*=(const Rational& c) {
    if (sgn(c) == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, v] : terms_) v *= c;
    return *this;
}

GradedPoly operator*(const GradedPoly& a, const GradedPoly& b) {
    require_same_chart(a.chart_, b.chart_);
    GradedPoly out(a.chart_);
    const auto& odd = a.chart_.odd_mask();
    Monomial m;
    for (const auto& [ma, ca] : a.terms_) {
        for (const auto& [mb, cb] : b.terms_) {
            const int s = multiply_monomials(odd, ma, mb, m);
            if (s == 0) continue;
            Rational c = ca * cb;
            if (s < 0) c = -c;
            out.add_term(m, c);
        }
    }
    return out;
}

bool GradedPoly::operator==(const GradedPoly& other) const {
    return chart_ == other.chart_ && terms_ == other.terms_;
}

GradedPoly mul(const GradedPoly& p, const GradedPoly& q) { return p * q; }

Parity monomial_parity(const Chart& chart, const Monomial& m) {
    const auto& odd = chart.odd_mask();
    unsigned n = 0;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (odd[i]) n += m[i];
    }
    return parity_of_count(n);
}

bool is_homogeneous(const GradedPoly& p) {
    if (p.is_zero()) return true;
    const Parity first = monomial_parity(p.chart(), p.terms().begin()->first);
    for (const auto& [m, c] : p.terms()) {
        if (monomial_parity(p.chart(), m) != first) return false;
    }
    return true;
}

Parity parity_of(const GradedPoly& p) {
    if (p.is_zero()) return Parity::even;
    if (!is_homogeneous(p)) {
        throw Error(ErrorKind::inhomogeneous_parity, "polynomial mixes even and odd terms");
    }
    return monomial_parity(p.chart(), p.terms().begin()->first);
}

GradedPoly left_derivative(const GradedPoly& p, std::size_t k) {
    const Chart& chart = p.chart();
    if (k >= chart.size()) throw Error(ErrorKind::invalid_argument, "coordinate index out of range");
    const auto& odd = chart.odd_mask();
    GradedPoly out(chart);
    for (const auto& [m, c] : p.terms()) {
        if (m[k] == 0) continue;
        Rational v = c;
        if (odd[k]) {
            unsigned before = 0;
            for (std::size_t i = 0; i < k; ++i) {
                if (odd[i]) before += m[i];
            }
            if (before & 1U) v = -v;
        } else {
            v *= m[k];
        }
        Monomial r = m;
        --r[k];
        out.add_term(r, v);
    }
    return out;
}

GradedPoly left_derivative(const GradedPoly& p, std::string_view name) {
    return left_derivative(p, p.chart().index_of(name));
}

GradedPoly substitute(const GradedPoly& p, const Binding& binding, const Chart& target) {
    const Chart& chart = p.chart();
    for (const auto& [i, rep] : binding) {
        if (i >= chart.size()) throw Error(ErrorKind::invalid_argument, "binding index out of range");
        if (rep.chart() != target) {
            throw Error(ErrorKind::mixed_charts, "replacement for '" + chart[i].name + "' is on another chart");
        }
        if (!rep.is_zero() && (!is_homogeneous(rep) || parity_of(rep) != chart[i].parity)) {
            throw Error(ErrorKind::parity_mismatch,
                        "replacement for '" + chart[i].name + "' does not have parity " +
                            to_string(chart[i].parity));
        }
    }

    std::vector<const GradedPoly*> rep(chart.size(), nullptr);
    std::vector<GradedPoly> carried;
    carried.reserve(chart.size());
    std::vector<std::vector<GradedPoly>> powers(chart.size());
    auto replacement = [&](std::size_t i) -> const GradedPoly& {
        if (!rep[i]) {
            if (auto it = binding.find(i); it != binding.end()) {
                rep[i] = &it->second;
            } else {
                auto j = target.find(chart[i].name);
                if (!j) {
                    throw Error(ErrorKind::unknown_identifier,
                                "coordinate '" + chart[i].name + "' has no counterpart on the target chart");
                }
                if (target[*j].parity != chart[i].parity) {
                    throw Error(ErrorKind::parity_mismatch,
                                "coordinate '" + chart[i].name + "' changes parity across charts");
                }
                carried.push_back(GradedPoly::variable(target, *j));
                rep[i] = &carried.back();
            }
        }
        return *rep[i];
    };
    auto power = [&](std::size_t i, unsigned e) -> const GradedPoly& {
        auto& pw = powers[i];
        if (pw.empty()) pw.push_back(replacement(i));
        while (pw.size() < e) pw.push_back(pw.back() * replacement(i));
        return pw[e - 1];
    };

    GradedPoly out(target);
    const GradedPoly one = GradedPoly::constant(target, 1);
    for (const auto& [m, c] : p.terms()) {
        GradedPoly acc = one * c;
        for (std::size_t i = 0; i < m.size() && !acc.is_zero(); ++i) {
            if (m[i] == 0) continue;
            acc = acc * power(i, m[i]);
        }
        out += acc;
    }
    return out;
}

GradedPoly substitute(const GradedPoly& p, const Binding& binding) {
    return substitute(p, binding, p.chart());
}

GradedPoly transfer(const GradedPoly& p, const Chart& target) {
    if (p.chart() == target) return p;
    const Chart& chart = p.chart();
    // Order-preserving re-indexing needs no signs.
    std::vector<std::optional<std::size_t>> map(chart.size());
    bool monotone = true;
    std::optional<std::size_t> last;
    for (std::size_t i = 0; i < chart.size(); ++i) {
        map[i] = target.find(chart[i].name);
        if (map[i]) {
            if (target[*map[i]].parity != chart[i].parity) {
                throw Error(ErrorKind::parity_mismatch,
                            "coordinate '" + chart[i].name + "' changes parity across charts");
            }
            if (last && *map[i] < *last) monotone = false;
            last = map[i];
        }
    }
    if (!monotone) return substitute(p, {}, target);
    GradedPoly out(target);
    for (const auto& [m, c] : p.terms()) {
        Monomial r(target.size(), 0);
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (m[i] == 0) continue;
            if (!map[i]) {
                throw Error(ErrorKind::unknown_identifier,
                            "coordinate '" + chart[i].name + "' has no counterpart on the target chart");
            }
            r[*map[i]] = m[i];
        }
        out.add_term(r, c);
    }
    return out;
}

GradedPoly berezin_integral(const GradedPoly& p, std::span<const std::size_t> odd_vars) {
    for (std::size_t v : odd_vars) {
        if (v >= p.chart().size()) throw Error(ErrorKind::invalid_argument, "coordinate index out of range");
        if (!is_odd(p.chart()[v].parity)) {
            throw Error(ErrorKind::odd_in_berezin_list,
                        "Berezin integration over even coordinate '" + p.chart()[v].name + "'");
        }
    }
    GradedPoly out = p;
    for (std::size_t v : odd_vars) out = left_derivative(out, v);
    return out;
}

unsigned degree_in(const Monomial& m, std::span<const std::size_t> coords) {
    unsigned d = 0;
    for (std::size_t i : coords) d += m[i];
    return d;
}

}  // namespace aksz
