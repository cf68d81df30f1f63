#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "aksz/parse.hpp"
#include "support/naive.hpp"
#include "support/random.hpp"

using namespace aksz;

namespace {

Chart make(std::initializer_list<std::pair<const char*, Parity>> cs) {
    std::vector<Coordinate> v;
    for (auto [n, p] : cs) v.push_back({n, p, Role::target});
    return Chart(v);
}

const Chart xt = make({{"x", Parity::even}, {"th1", Parity::odd}, {"th2", Parity::odd}});

GradedPoly P(std::string_view s, const Chart& c = xt) { return parse_expression(s, c); }

template <class F>
ErrorKind kind_of(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("no error raised");
    return ErrorKind::schema;
}

}  // namespace

TEST_CASE("parse collects anticommuting products") {
    CHECK(P("th1*th2 - th2*th1") == 2 * P("th1*th2"));
    CHECK(print_poly(P("th1*th2 - th2*th1")) == "2*th1*th2");
    CHECK(P("3/2*x^2*th1 + x*th1 - 1/2*x^2*th1") == P("x^2*th1 + x*th1"));
    CHECK(P("-(x - 1)*(x + 1)") == P("1 - x^2"));
    CHECK(P("2/4") == GradedPoly::constant(xt, Rational(1, 2)));
    CHECK(P("--x") == P("x"));
}

TEST_CASE("parse errors") {
    CHECK(kind_of([] { P("th1^2"); }) == ErrorKind::odd_square);
    CHECK(kind_of([] { P("x + z"); }) == ErrorKind::unknown_identifier);
    CHECK(kind_of([] { P("2 x"); }) == ErrorKind::syntax);
    CHECK(kind_of([] { P("1/0"); }) == ErrorKind::syntax);
    CHECK(kind_of([] { P("(x + 1"); }) == ErrorKind::syntax);
    CHECK(kind_of([] { P(""); }) == ErrorKind::syntax);
    try {
        P("x +\n  * th1");
        FAIL("expected a syntax error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
        CHECK(e.column() == 3);
    }
    CHECK(P("th1^1") == P("th1"));
    CHECK(P("th1^0") == P("1"));
}

TEST_CASE("print_poly formatting") {
    CHECK(print_poly(GradedPoly(xt)) == "0");
    CHECK(print_poly(P("x*th1 - 1/2*x^2")) == "-1/2*x^2 + x*th1");
    CHECK(print_poly(P("-1")) == "-1");
    CHECK(print_poly(P("th2*th1 + 3")) == "-th1*th2 + 3");
}

TEST_CASE("mul examples") {
    CHECK(P("th1") * P("th2") == P("th1*th2"));
    CHECK(P("th2") * P("th1") == -P("th1*th2"));
    CHECK(P("x") * P("th1") == P("th1") * P("x"));
    CHECK((P("th1*th2") * P("th1")).is_zero());
    const Chart other = make({{"x", Parity::even}});
    CHECK(kind_of([&] { return P("x") * GradedPoly::variable(other, 0); }) == ErrorKind::mixed_charts);
}

TEST_CASE("left_derivative examples") {
    CHECK(left_derivative(P("th1*th2"), "th2") == -P("th1"));
    CHECK(left_derivative(P("x^2"), "x") == P("2*x"));
    CHECK(left_derivative(P("th1*th2"), "th1") == P("th2"));
    CHECK(left_derivative(P("5"), "x").is_zero());
}

TEST_CASE("substitute examples") {
    const Chart target = make({{"y1", Parity::even}, {"y2", Parity::even}});
    const Chart mapping = make({{"x1", Parity::even}, {"x2", Parity::even}, {"xi", Parity::odd},
                                {"eta1", Parity::odd}, {"eta2", Parity::odd}});
    Binding b{{0, P("x1 + xi*eta1", mapping)}, {1, P("x2 + xi*eta2", mapping)}};
    CHECK(substitute(P("y1*y2", target), b, mapping) == P("x1*x2 + x1*xi*eta2 + xi*eta1*x2", mapping));
    const GradedPoly p = P("x*th1 + th2");
    CHECK(substitute(p, {}) == p);
    CHECK(substitute(P("th1"), {{1, GradedPoly(xt)}}).is_zero());
    CHECK(kind_of([&] { substitute(P("x"), {{0, P("th1")}}); }) == ErrorKind::parity_mismatch);
}

TEST_CASE("berezin_integral examples") {
    const Chart c = make({{"x", Parity::even}, {"xi1", Parity::odd}, {"xi2", Parity::odd}, {"eta", Parity::odd}});
    const std::vector<std::size_t> both{1, 2};
    const std::vector<std::size_t> first{1};
    CHECK(berezin_integral(P("xi1*xi2", c), both) == P("1", c));
    CHECK(berezin_integral(P("xi2*xi1", c), both) == P("-1", c));
    CHECK(berezin_integral(P("x + xi1*eta", c), first) == P("eta", c));
    const std::vector<std::size_t> even{0};
    CHECK(kind_of([&] { berezin_integral(P("x", c), even); }) == ErrorKind::odd_in_berezin_list);
}

TEST_CASE("parity_of examples") {
    CHECK(parity_of(P("th1*th2")) == Parity::even);
    CHECK(parity_of(P("x*th1")) == Parity::odd);
    CHECK(parity_of(GradedPoly(xt)) == Parity::even);
    CHECK(kind_of([] { parity_of(P("x + th1")); }) == ErrorKind::inhomogeneous_parity);
    CHECK_FALSE(is_homogeneous(P("x + th1")));
}

TEST_CASE("transfer to a reordered chart applies Koszul signs") {
    const Chart ab = make({{"a", Parity::odd}, {"b", Parity::odd}});
    const Chart ba = make({{"b", Parity::odd}, {"a", Parity::odd}});
    CHECK(transfer(P("a*b", ab), ba) == -P("b*a", ba));
    CHECK(print_poly(transfer(P("a*b", ab), ba)) == "-b*a");
    CHECK(transfer(transfer(P("a*b + 2*a", ab), ba), ab) == P("a*b + 2*a", ab));
}

TEST_CASE("operations agree with the naive word-sorting oracle") {
    gen::Rng rng(11);
    for (int k = 0; k < 150; ++k) {
        const Chart c = gen::chart(rng, gen::uniform(rng, 0, 3), gen::uniform(rng, 1, 4));
        const GradedPoly p = gen::poly(rng, c, 5, 4);
        const GradedPoly q = gen::poly(rng, c, 5, 4);
        const naive::Poly np = naive::Poly::from(p), nq = naive::Poly::from(q);
        REQUIRE((np * nq).to_graded() == p * q);
        const std::size_t v = static_cast<std::size_t>(gen::uniform(rng, 0, static_cast<int>(c.size()) - 1));
        REQUIRE(np.derivative(v).to_graded() == left_derivative(p, v));

        std::vector<std::size_t> odd;
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (is_odd(c[i].parity)) odd.push_back(i);
        }
        std::shuffle(odd.begin(), odd.end(), rng);
        REQUIRE(np.berezin(odd).to_graded() == berezin_integral(p, odd));

        Binding b;
        std::map<std::size_t, naive::Poly> nb;
        for (std::size_t i = 0; i < c.size(); ++i) {
            GradedPoly r = gen::poly(rng, c, 3, 2, c[i].parity);
            nb.emplace(i, naive::Poly::from(r));
            b.emplace(i, std::move(r));
        }
        REQUIRE(np.substitute(nb, c).to_graded() == substitute(p, b));
    }
}

TEST_CASE("print then parse is the identity") {
    gen::Rng rng(5);
    for (int k = 0; k < 100; ++k) {
        const Chart c = gen::chart(rng, 2, 3);
        const GradedPoly p = gen::poly(rng, c, 6, 4);
        REQUIRE(parse_expression(print_poly(p), c) == p);
    }
}

TEST_CASE("algebraic laws on random homogeneous polynomials") {
    gen::Rng rng(3);
    for (int k = 0; k < 100; ++k) {
        const Chart c = gen::chart(rng, 2, 3);
        const Parity pf = gen::parity(rng), pg = gen::parity(rng);
        const GradedPoly f = gen::poly(rng, c, 4, 3, pf);
        const GradedPoly g = gen::poly(rng, c, 4, 3, pg);
        const GradedPoly h = gen::poly(rng, c, 4, 3);
        REQUIRE((f * g) * h == f * (g * h));
        REQUIRE(f * g == Rational(koszul(pf, pg)) * (g * f));
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (is_odd(c[i].parity)) REQUIRE((GradedPoly::variable(c, i) * GradedPoly::variable(c, i)).is_zero());
            const Rational s = koszul(c[i].parity, pf);
            REQUIRE(left_derivative(f * g, i) == left_derivative(f, i) * g + s * (f * left_derivative(g, i)));
            for (std::size_t j = 0; j < c.size(); ++j) {
                const Rational t = koszul(c[i].parity, c[j].parity);
                REQUIRE(left_derivative(left_derivative(h, j), i) == t * left_derivative(left_derivative(h, i), j));
            }
        }
    }
}
