#include "aksz/symplectic.hpp"

#include "aksz/parse.hpp"

namespace aksz {

PolyMatrix matrix_product(const PolyMatrix& a, const PolyMatrix& b) {
    const std::size_t n = a.size();
    if (n == 0) return {};
    const Chart& chart = a[0][0].chart();
    PolyMatrix out(n, std::vector<GradedPoly>(n, GradedPoly(chart)));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            if (a[i][k].is_zero()) continue;
            for (std::size_t j = 0; j < n; ++j) {
                if (b[k][j].is_zero()) continue;
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    return out;
}

PolyMatrix identity_matrix(const Chart& chart, std::size_t n) {
    PolyMatrix out(n, std::vector<GradedPoly>(n, GradedPoly(chart)));
    for (std::size_t i = 0; i < n; ++i) out[i][i] = GradedPoly::constant(chart, 1);
    return out;
}

SymplecticStructure::SymplecticStructure(SuperForm omega)
    : omega_(std::move(omega)), base_(omega_.chart().base()), cache_(std::make_shared<Cache>()) {
    const Chart& doubled = omega_.chart();
    for (std::size_t i = 0; i < base_.size(); ++i) {
        if (!doubled.differential_of(i)) {
            throw Error(ErrorKind::invalid_argument,
                        "symplectic structure needs a differential for '" + base_[i].name + "'");
        }
    }
    if (!omega_.is_zero() && omega_.pure_degree() != 2u) {
        throw Error(ErrorKind::invalid_argument, "symplectic form must be a pure 2-form");
    }
    parity_ = parity_of(omega_.value());
    if (!exterior_derivative(omega_).is_zero()) {
        throw Error(ErrorKind::not_closed, "symplectic form is not closed");
    }
    const std::size_t n = base_.size();
    matrix_.assign(n, std::vector<GradedPoly>(n, GradedPoly(base_)));
    for (std::size_t a = 0; a < n; ++a) {
        const GradedPoly row = left_derivative(omega_.value(), *doubled.differential_of(a));
        for (std::size_t b = 0; b < n; ++b) {
            matrix_[a][b] = differential_coefficient(row, *doubled.differential_of(b));
        }
    }
}

const PolyMatrix& SymplecticStructure::inverse() const {
    std::call_once(cache_->once, [this] { cache_->inverse = invert_constant_plus_nilpotent(matrix_, base_); });
    return cache_->inverse;
}

namespace {

// Gauss-Jordan over the rationals.
std::vector<std::vector<Rational>> invert_rational(std::vector<std::vector<Rational>> m) {
    const std::size_t n = m.size();
    std::vector<std::vector<Rational>> inv(n, std::vector<Rational>(n, 0));
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && sgn(m[pivot][col]) == 0) ++pivot;
        if (pivot == n) throw Error(ErrorKind::not_invertible, "constant part of the 2-form is singular");
        std::swap(m[pivot], m[col]);
        std::swap(inv[pivot], inv[col]);
        const Rational p = m[col][col];
        for (std::size_t j = 0; j < n; ++j) {
            m[col][j] /= p;
            inv[col][j] /= p;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || sgn(m[r][col]) == 0) continue;
            const Rational f = m[r][col];
            for (std::size_t j = 0; j < n; ++j) {
                m[r][j] -= f * m[col][j];
                inv[r][j] -= f * inv[col][j];
            }
        }
    }
    return inv;
}

bool contains_odd(const Chart& chart, const Monomial& m) {
    const auto& odd = chart.odd_mask();
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (odd[i] && m[i]) return true;
    }
    return false;
}

bool is_zero_matrix(const PolyMatrix& m) {
    for (const auto& row : m) {
        for (const auto& e : row) {
            if (!e.is_zero()) return false;
        }
    }
    return true;
}

}  // namespace

PolyMatrix invert_constant_plus_nilpotent(const PolyMatrix& c, const Chart& chart) {
    const std::size_t n = c.size();
    std::vector<std::vector<Rational>> c0(n, std::vector<Rational>(n, 0));
    PolyMatrix nu(n, std::vector<GradedPoly>(n, GradedPoly(chart)));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            c0[i][j] = c[i][j].constant_term();
            nu[i][j] = c[i][j] - GradedPoly::constant(chart, c0[i][j]);
            for (const auto& [m, coeff] : nu[i][j].terms()) {
                if (!contains_odd(chart, m)) {
                    throw Error(ErrorKind::not_nilpotent_perturbation,
                                "matrix entry (" + std::to_string(i) + "," + std::to_string(j) +
                                    ") has a non-constant purely even term: " + print_poly(nu[i][j]));
                }
            }
        }
    }
    const auto c0_inv_q = invert_rational(c0);
    PolyMatrix c0_inv(n, std::vector<GradedPoly>(n, GradedPoly(chart)));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) c0_inv[i][j] = GradedPoly::constant(chart, c0_inv_q[i][j]);
    }
    // N = -nu C0^{-1} is nilpotent: a product of more than odd_count entries vanishes.
    PolyMatrix step = matrix_product(nu, c0_inv);
    for (auto& row : step) {
        for (auto& e : row) e = -e;
    }
    PolyMatrix sum = identity_matrix(chart, n);
    PolyMatrix power = identity_matrix(chart, n);
    for (std::size_t k = 0; k <= chart.odd_count(); ++k) {
        power = matrix_product(power, step);
        if (is_zero_matrix(power)) break;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) sum[i][j] += power[i][j];
        }
    }
    return matrix_product(c0_inv, sum);
}

PolyMatrix invert_two_form(const SymplecticStructure& omega) { return omega.inverse(); }

VectorField hamiltonian_field(const GradedPoly& H, const SymplecticStructure& omega) {
    const Chart& base = omega.base();
    const Chart& doubled = omega.doubled();
    const GradedPoly h = transfer(H, base);
    if (!is_homogeneous(h)) throw Error(ErrorKind::inhomogeneous_parity, "Hamiltonian must be homogeneous");
    const Parity field_parity = parity_of(h) + omega.parity();
    if (h.is_zero()) return VectorField(base, field_parity);
    const PolyMatrix& psi = omega.inverse();

    // Solve (-1)^{X~} sum_a X^a C_ab = coefficient of dx^b in -dH.
    GradedPoly rhs = -exterior_derivative(function_form(h, doubled)).value();
    if (is_odd(field_parity)) rhs = -rhs;
    const std::size_t n = base.size();
    std::vector<GradedPoly> r;
    r.reserve(n);
    for (std::size_t b = 0; b < n; ++b) r.push_back(differential_coefficient(rhs, *doubled.differential_of(b)));
    std::vector<GradedPoly> comps(n, GradedPoly(base));
    for (std::size_t c = 0; c < n; ++c) {
        for (std::size_t b = 0; b < n; ++b) {
            if (r[b].is_zero() || psi[b][c].is_zero()) continue;
            comps[c] += r[b] * psi[b][c];
        }
    }
    return VectorField(base, field_parity, std::move(comps));
}

GradedPoly poisson_bracket(const GradedPoly& f, const GradedPoly& g, const SymplecticStructure& omega) {
    return apply_field(hamiltonian_field(f, omega), transfer(g, omega.base()));
}

MasterCheck master_equation(const GradedPoly& S, const SymplecticStructure& omega) {
    MasterCheck out;
    const GradedPoly s = transfer(S, omega.base());
    const VectorField xs = hamiltonian_field(s, omega);
    out.bracket = apply_field(xs, s);
    out.bracket_vanishes = out.bracket.is_zero();
    out.field_homological = is_homological(xs) || (xs.is_zero());
    out.trivially_zero = !s.is_zero() && parity_of(s) == omega.parity();
    return out;
}

bool master_check(const GradedPoly& S, const SymplecticStructure& omega) {
    return master_equation(S, omega).bracket_vanishes;
}

}  // namespace aksz
