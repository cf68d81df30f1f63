#pragma once

// Word-level re-expansion of the mapping-space constructions, built only from
// coordinate names and the naive oracle. Used to check the library's
// push-forward, pull-back, AKSZ form and action.

#include <bit>

#include "aksz/mapping_space.hpp"
#include "support/naive.hpp"

namespace expand {

using aksz::Chart;
using aksz::GradedPoly;
using aksz::MappingChart;
using aksz::Rational;
using aksz::VectorField;
using naive::Poly;
using naive::Word;

inline std::string label(unsigned mask, unsigned q) {
    std::string s;
    for (unsigned a = 0; a < q; ++a) {
        if (mask & (1U << a)) s += std::to_string(a + 1);
    }
    return s.empty() ? "0" : s;
}

inline std::size_t xi_index(const MappingChart& mc, unsigned a) {
    return mc.expansion().index_of(mc.source().chart()[a].name);
}

// sum_I <prefix y>_I xi^I with the increasing product of the xi.
inline Poly series(const MappingChart& mc, const std::string& name, const std::string& prefix) {
    const Chart& ex = mc.expansion();
    const unsigned q = mc.q();
    Poly out(ex);
    for (unsigned mask = 0; mask < (1U << q); ++mask) {
        Word w{ex.index_of(prefix + name + "_" + label(mask, q))};
        for (unsigned a = 0; a < q; ++a) {
            if (mask & (1U << a)) w.push_back(xi_index(mc, a));
        }
        out.add(w, 1);
    }
    return out;
}

// Binding of a chart made of source, target and target-differential names.
inline std::map<std::size_t, Poly> binding(const MappingChart& mc, const Chart& c) {
    std::map<std::size_t, Poly> b;
    for (std::size_t i = 0; i < c.size(); ++i) {
        const std::string& n = c[i].name;
        if (mc.source().chart().find(n)) {
            Poly x(mc.expansion());
            x.add({mc.expansion().index_of(n)}, 1);
            b.emplace(i, x);
        } else if (mc.target().find(n)) {
            b.emplace(i, series(mc, n, ""));
        } else {
            b.emplace(i, series(mc, n.substr(1), "d"));
        }
    }
    return b;
}

inline Poly along(const MappingChart& mc, const GradedPoly& f) {
    return Poly::from(f).substitute(binding(mc, f.chart()), mc.expansion());
}

// Coefficients [f]_I, as polynomials on the doubled mapping chart.
inline std::vector<GradedPoly> coefficients(const MappingChart& mc, const Poly& f) {
    const Chart& ex = mc.expansion();
    const unsigned q = mc.q();
    std::vector<Poly> parts(std::size_t{1} << q, Poly(ex));
    for (const auto& [w, c] : f.terms()) {
        Word head;
        unsigned mask = 0;
        for (std::size_t i : w) {
            bool is_xi = false;
            for (unsigned a = 0; a < q; ++a) {
                if (i == xi_index(mc, a)) {
                    mask |= 1U << a;
                    is_xi = true;
                }
            }
            if (!is_xi) head.push_back(i);
        }
        parts[mask].add(head, c);
    }
    std::vector<GradedPoly> out;
    for (const auto& p : parts) out.push_back(aksz::transfer(p.to_graded(), mc.doubled()));
    return out;
}

inline VectorField assemble(const MappingChart& mc, const std::vector<Poly>& tangent, aksz::Parity parity) {
    const unsigned q = mc.q();
    const Rational sign = (q % 2 == 1 && aksz::is_odd(parity)) ? -1 : 1;
    std::map<std::string, GradedPoly> table;
    for (std::size_t i = 0; i < tangent.size(); ++i) {
        const auto cs = coefficients(mc, tangent[i]);
        for (unsigned mask = 0; mask < cs.size(); ++mask) {
            if (cs[mask].is_zero()) continue;
            table.emplace(mc.target()[i].name + "_" + label(mask, q), sign * aksz::transfer(cs[mask], mc.fields()));
        }
    }
    return VectorField::from_table(mc.fields(), parity, table);
}

inline VectorField push(const VectorField& Y, const MappingChart& mc) {
    std::vector<Poly> t;
    for (std::size_t i = 0; i < Y.size(); ++i) t.push_back(along(mc, Y.component(i)));
    return assemble(mc, t, Y.parity());
}

inline VectorField pull(const VectorField& X, const MappingChart& mc) {
    std::vector<Poly> t;
    for (std::size_t i = 0; i < mc.target().size(); ++i) {
        const Poly phi = series(mc, mc.target()[i].name, "");
        Poly k(mc.expansion());
        for (unsigned a = 0; a < mc.q(); ++a) k = k + along(mc, X.component(a)) * phi.derivative(xi_index(mc, a));
        t.push_back(k);
    }
    return assemble(mc, t, X.parity());
}

inline Poly integrate(const MappingChart& mc, const Poly& f) {
    std::vector<std::size_t> xs;
    for (unsigned a = 0; a < mc.q(); ++a) xs.push_back(xi_index(mc, a));
    return f.berezin(xs);
}

// int Dxi rho * omega(phi, dphi)
inline GradedPoly aksz_form(const MappingChart& mc, const GradedPoly& rho, const GradedPoly& omega) {
    const Poly v = integrate(mc, along(mc, rho) * along(mc, omega));
    return aksz::transfer(v.to_graded(), mc.doubled());
}

// int Dxi rho * (Q^a d_a phi^i * lambda_i(phi) - H(phi)), lambda_i = d lambda / d(dy^i).
inline GradedPoly action(const MappingChart& mc, const VectorField& Q, const GradedPoly& rho, const GradedPoly& lambda,
                         const GradedPoly& H) {
    const Chart& tf = lambda.chart();
    Poly bulk = along(mc, -H);
    for (std::size_t i = 0; i < mc.target().size(); ++i) {
        const std::string& y = mc.target()[i].name;
        const Poly phi = series(mc, y, "");
        Poly k(mc.expansion());
        for (unsigned a = 0; a < mc.q(); ++a) k = k + along(mc, Q.component(a)) * phi.derivative(xi_index(mc, a));
        const Poly li = Poly::from(lambda).derivative(tf.index_of("d" + y));
        bulk = bulk + k * li.substitute(binding(mc, tf), mc.expansion());
    }
    const Poly v = integrate(mc, along(mc, rho) * bulk);
    return aksz::transfer(v.to_graded(), mc.fields());
}

}  // namespace expand
