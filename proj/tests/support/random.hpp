#pragma once

#include <algorithm>
#include <optional>
#include <random>
#include <string>

#include "aksz/vector_field.hpp"

namespace gen {

using aksz::Chart;
using aksz::Coordinate;
using aksz::GradedPoly;
using aksz::Monomial;
using aksz::Parity;
using aksz::Rational;
using aksz::VectorField;

using Rng = std::mt19937_64;

inline int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

/// Even coordinates x1.., odd coordinates t1.., declared in a shuffled order.
inline Chart chart(Rng& rng, int n_even, int n_odd, const std::string& even = "x", const std::string& odd = "t",
                   aksz::Role role = aksz::Role::target) {
    std::vector<Coordinate> cs;
    for (int i = 1; i <= n_even; ++i) cs.push_back({even + std::to_string(i), Parity::even, role});
    for (int i = 1; i <= n_odd; ++i) cs.push_back({odd + std::to_string(i), Parity::odd, role});
    std::shuffle(cs.begin(), cs.end(), rng);
    return Chart(cs);
}

inline Rational coefficient(Rng& rng) {
    int num = 0;
    while (num == 0) num = uniform(rng, -5, 5);
    Rational r(num, uniform(rng, 1, 3));
    r.canonicalize();
    return r;
}

/// nullopt when no monomial of the requested parity turns up.
inline std::optional<Monomial> monomial(Rng& rng, const Chart& c, int max_degree, std::optional<Parity> parity) {
    for (int attempt = 0; attempt < 64; ++attempt) {
        Monomial m(c.size(), 0);
        int budget = uniform(rng, 0, max_degree);
        while (budget-- > 0 && c.size() > 0) {
            const std::size_t i = static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(c.size()) - 1));
            if (aksz::is_odd(c[i].parity) && m[i]) continue;
            ++m[i];
        }
        if (!parity || aksz::monomial_parity(c, m) == *parity) return m;
    }
    return std::nullopt;
}

/// Up to max_terms random terms of degree <= max_degree; homogeneous of the
/// given parity when one is requested.
inline GradedPoly poly(Rng& rng, const Chart& c, int max_terms, int max_degree,
                       std::optional<Parity> parity = std::nullopt) {
    GradedPoly p(c);
    const int n = uniform(rng, 0, max_terms);
    for (int k = 0; k < n; ++k) {
        if (auto m = monomial(rng, c, max_degree, parity)) p += GradedPoly::term(c, *m, coefficient(rng));
    }
    return p;
}

inline Parity parity(Rng& rng) { return uniform(rng, 0, 1) ? Parity::odd : Parity::even; }

inline VectorField field(Rng& rng, const Chart& c, Parity p, int max_terms, int max_degree) {
    std::vector<GradedPoly> comps;
    for (std::size_t i = 0; i < c.size(); ++i) {
        comps.push_back(uniform(rng, 0, 2) == 0 ? GradedPoly(c) : poly(rng, c, max_terms, max_degree, p + c[i].parity));
    }
    return VectorField(c, p, std::move(comps));
}

}  // namespace gen
