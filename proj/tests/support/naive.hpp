#pragma once

// Test-only reference implementation of the graded polynomial algebra. Terms
// are words of coordinate indices; products concatenate words and a bubble
// sort brings them to chart order, flipping the sign on every swap of two
// odd letters. It shares no code with GradedPoly beyond the chart.

#include <map>
#include <vector>

#include "aksz/poly.hpp"

namespace naive {

using aksz::Chart;
using aksz::GradedPoly;
using aksz::Rational;
using Word = std::vector<std::size_t>;

class Poly {
public:
    explicit Poly(Chart chart) : chart_(std::move(chart)) {}

    static Poly from(const GradedPoly& p) {
        Poly out(p.chart());
        for (const auto& [m, c] : p.terms()) {
            Word w;
            for (std::size_t i = 0; i < m.size(); ++i) {
                for (unsigned e = 0; e < m[i]; ++e) w.push_back(i);
            }
            out.add(w, c);
        }
        return out;
    }

    GradedPoly to_graded() const {
        GradedPoly out(chart_);
        for (const auto& [w, c] : terms_) {
            aksz::Monomial m(chart_.size(), 0);
            for (std::size_t i : w) ++m[i];
            out += GradedPoly::term(chart_, m, c);
        }
        return out;
    }

    bool odd(std::size_t i) const { return aksz::is_odd(chart_[i].parity); }

    // Adds c times the (unsorted) word.
    void add(Word w, Rational c) {
        for (std::size_t pass = 0; pass < w.size(); ++pass) {
            for (std::size_t k = 0; k + 1 < w.size(); ++k) {
                if (w[k] > w[k + 1]) {
                    if (odd(w[k]) && odd(w[k + 1])) c = -c;
                    std::swap(w[k], w[k + 1]);
                }
            }
        }
        for (std::size_t k = 0; k + 1 < w.size(); ++k) {
            if (w[k] == w[k + 1] && odd(w[k])) return;
        }
        Rational& slot = terms_[w];
        slot += c;
        if (slot == 0) terms_.erase(w);
    }

    friend Poly operator+(Poly a, const Poly& b) {
        for (const auto& [w, c] : b.terms_) a.add(w, c);
        return a;
    }

    friend Poly operator*(const Poly& a, const Poly& b) {
        Poly out(a.chart_);
        for (const auto& [wa, ca] : a.terms_) {
            for (const auto& [wb, cb] : b.terms_) {
                Word w = wa;
                w.insert(w.end(), wb.begin(), wb.end());
                out.add(w, ca * cb);
            }
        }
        return out;
    }

    // Left derivative: every occurrence of the letter is moved to the front
    // past the letters before it and removed.
    Poly derivative(std::size_t var) const {
        Poly out(chart_);
        for (const auto& [w, c] : terms_) {
            for (std::size_t k = 0; k < w.size(); ++k) {
                if (w[k] != var) continue;
                Rational s = c;
                if (odd(var)) {
                    for (std::size_t j = 0; j < k; ++j) {
                        if (odd(w[j])) s = -s;
                    }
                }
                Word r = w;
                r.erase(r.begin() + static_cast<std::ptrdiff_t>(k));
                out.add(r, s);
                if (odd(var)) break;
            }
        }
        return out;
    }

    // Replaces every letter by its image and multiplies out left to right.
    Poly substitute(const std::map<std::size_t, Poly>& binding, const Chart& target) const {
        Poly out(target);
        for (const auto& [w, c] : terms_) {
            Poly acc(target);
            acc.add({}, c);
            for (std::size_t i : w) acc = acc * binding.at(i);
            out = out + acc;
        }
        return out;
    }

    // Top coefficient of the listed odd letters, taken one derivative at a time.
    Poly berezin(const std::vector<std::size_t>& vars) const {
        Poly out = *this;
        for (std::size_t v : vars) out = out.derivative(v);
        return out;
    }

    const std::map<Word, Rational>& terms() const { return terms_; }
    const Chart& chart() const { return chart_; }

private:
    Chart chart_;
    std::map<Word, Rational> terms_;
};

}  // namespace naive
