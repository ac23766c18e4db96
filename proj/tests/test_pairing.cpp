#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <vector>

#include "plumb/pairing.hpp"

#include "helpers.hpp"

using plumb::Complex;
using plumb::Series;
using plumb::domain_error;
using plumb::testing::random_series;
namespace model = plumb::model;
namespace pairing = plumb::pairing;
using model::SectionK;
using model::VerticalSection;
using model::kPi;
using pairing::CoordinateChange;
using pairing::Method;

namespace {
const std::vector<std::string> ZW{"z", "w"};
Complex C(double re, double im = 0.0) { return Complex(re, im); }
Series mono(const std::vector<std::string>& v, int t, std::vector<int> e, Complex c) {
    return Series::monomial(v, t, std::move(e), c);
}

// F = a1 x + a2 x^2 + ... as a univariate series
Series univ(const std::string& var, int trunc, std::vector<Complex> coeffs) {
    Series s({var}, trunc);
    for (std::size_t i = 0; i < coeffs.size(); ++i)
        if (std::abs(coeffs[i]) > 0.0) s = s + mono({var}, trunc, {static_cast<int>(i) + 1}, coeffs[i]);
    return s;
}
} // namespace

TEST_CASE("coordinate changes validate their jet data") {
    REQUIRE_THROWS_AS(CoordinateChange(mono(ZW, 3, {1, 0}, C(1)), univ("w", 3, {C(1)})), domain_error);
    REQUIRE_THROWS_AS(CoordinateChange(Series::constant({"z"}, 3, C(1)), univ("w", 3, {C(1)})), domain_error);
    REQUIRE_THROWS_AS(CoordinateChange(univ("z", 3, {C(0), C(1)}), univ("w", 3, {C(1)})), domain_error);
    CoordinateChange ok(univ("z", 3, {C(2), C(5)}), univ("w", 3, {C(3), C(0), C(7)}));
    REQUIRE(ok.alpha() == C(2));
    REQUIRE(ok.beta() == C(5));
    REQUIRE(ok.gamma() == C(3));
    REQUIRE(ok.delta() == C(0));
    CoordinateChange lin(univ("z", 1, {C(4)}), univ("w", 1, {C(1)}));
    REQUIRE(lin.beta() == C(0));
}

TEST_CASE("the quarter section pairs to -pi/t exactly") {
    SectionK quarter(2, Series::constant(ZW, 4, C(0.25)));
    for (Complex t : {C(0.5), C(0.0, 0.25), C(-0.1, 0.2)}) {
        REQUIRE(pairing::plumbing_pairing(quarter, t) == Complex(-kPi, 0.0) / t);
    }
    REQUIRE_THROWS_AS(pairing::plumbing_pairing(quarter, C(0)), domain_error);
    REQUIRE_THROWS_AS(pairing::plumbing_pairing(quarter, C(2)), domain_error);
}

TEST_CASE("the vanishing-residue limit is -4 pi times the diagonal linear coefficient") {
    SectionK zw(2, mono(ZW, 4, {1, 1}, C(1)));
    REQUIRE(pairing::plumbing_pairing_limit_value(zw) == C(-4.0 * kPi));

    SectionK with_param(2, mono({"z", "w", "s"}, 4, {1, 1, 1}, C(1)));
    Series lim = pairing::plumbing_pairing_limit(with_param);
    REQUIRE(lim.vars() == std::vector<std::string>{"s"});
    REQUIRE(lim.coefficient({1}) == C(-4.0 * kPi));
    REQUIRE_THROWS_AS(pairing::plumbing_pairing_limit_value(with_param), domain_error);

    SectionK bad(2, Series::constant(ZW, 4, C(1)));
    REQUIRE_THROWS_AS(pairing::plumbing_pairing_limit(bad), domain_error);
}

TEST_CASE("vertical duals are reciprocals and need a unit constant term") {
    Series f = Series::constant(ZW, 4, C(2)) + mono(ZW, 4, {1, 0}, C(1));
    VerticalSection dual = pairing::dual_vertical(SectionK(1, f));
    REQUIRE(dual.coeff == f.reciprocal());
    SectionK back = pairing::dual_section(dual);
    REQUIRE(back.k == 1);
    REQUIRE(std::abs(back.coeff.coefficient({0, 0}) - C(2)) <= 1e-15);

    REQUIRE_THROWS_AS(pairing::dual_vertical(SectionK(1, mono(ZW, 4, {1, 0}, C(1)))), domain_error);
    REQUIRE_THROWS_AS(pairing::dual_vertical(SectionK(2, f)), domain_error);
    REQUIRE(pairing::adjoint_residue(VerticalSection(Series::constant(ZW, 4, C(4)))) == C(0.25));
}

TEST_CASE("admissibility means unit constant coefficient") {
    REQUIRE(pairing::admissible_check(
        VerticalSection(Series::constant(ZW, 4, C(1)) + mono(ZW, 4, {1, 0}, C(3)) + mono(ZW, 4, {0, 1}, C(-2)))));
    REQUIRE_FALSE(pairing::admissible_check(VerticalSection(Series::constant(ZW, 4, C(2)))));
    REQUIRE_FALSE(pairing::admissible_check(VerticalSection(
        Series::constant({"z", "w", "s"}, 4, C(1)) + mono({"z", "w", "s"}, 4, {0, 0, 1}, C(1)))));
    REQUIRE_THROWS_AS(pairing::admissible_check(VerticalSection(mono(ZW, 4, {1, 0}, C(1)))), domain_error);
}

TEST_CASE("LP pairing extracts 4(ad + bc + f) as the t-linear coefficient, exactly") {
    std::mt19937 rng(83);
    std::uniform_int_distribution<int> d(-9, 9);
    for (int trial = 0; trial < 50; ++trial) {
        Complex a(d(rng), d(rng)), b(d(rng), d(rng)), c(d(rng), d(rng)), dd(d(rng), d(rng));
        Complex e(d(rng), d(rng)), f(d(rng), d(rng)), g(d(rng), d(rng));
        VerticalSection lambda(Series::constant(ZW, 6, C(1)) + mono(ZW, 6, {1, 0}, a) + mono(ZW, 6, {0, 1}, b));
        Series phi = mono(ZW, 6, {1, 0}, c) + mono(ZW, 6, {0, 1}, dd) + mono(ZW, 6, {2, 0}, e) +
                     mono(ZW, 6, {1, 1}, f) + mono(ZW, 6, {0, 2}, g);
        Series lp = pairing::lp_pairing(lambda, SectionK(2, phi));
        REQUIRE(lp.coefficient({1}) == 4.0 * (a * dd + b * c + f));
    }
}

TEST_CASE("LP pairing requires weight 2 and admissibility") {
    VerticalSection lambda(Series::constant(ZW, 4, C(1)));
    REQUIRE_THROWS_AS(pairing::lp_pairing(lambda, SectionK(1, mono(ZW, 4, {1, 0}, C(1)))), domain_error);
    VerticalSection inadmissible(Series::constant(ZW, 4, C(2)));
    REQUIRE_THROWS_AS(pairing::lp_pairing(inadmissible, SectionK(2, mono(ZW, 4, {1, 1}, C(1)))), domain_error);
}

TEST_CASE("numeric LP matches the series LP on the annulus") {
    std::mt19937 rng(89);
    plumb::testing::RandomSeriesOptions opt;
    opt.integer = false;
    for (int trial = 0; trial < 10; ++trial) {
        Series g = Series::constant(ZW, 8, C(1)) + random_series(rng, ZW, 8, [] {
                       plumb::testing::RandomSeriesOptions o;
                       o.integer = false;
                       o.zero_constant = true;
                       return o;
                   }());
        VerticalSection lambda(g);
        SectionK phi(2, random_series(rng, ZW, 8, opt));
        Complex t = std::polar(5e-3, 0.7 * trial);
        Series lp = pairing::lp_pairing(lambda, phi);
        Complex series_val = lp.eval({{"t", t}});
        Complex numeric_val = pairing::lp_pairing_numeric(lambda, phi, t);
        REQUIRE(std::abs(series_val - numeric_val) <= 1e-10 * std::max(1.0, std::abs(series_val)));
    }
}

TEST_CASE("higher-order vertical perturbations keep the t-linear LP term") {
    std::mt19937 rng(97);
    std::uniform_int_distribution<int> d(-9, 9);
    for (int trial = 0; trial < 20; ++trial) {
        VerticalSection lambda(Series::constant(ZW, 8, C(1)) + mono(ZW, 8, {1, 0}, C(d(rng), d(rng))) +
                               mono(ZW, 8, {0, 1}, C(d(rng), d(rng))));
        Series quad = mono(ZW, 8, {2, 0}, C(d(rng), d(rng))) + mono(ZW, 8, {0, 2}, C(d(rng), d(rng))) +
                      mono(ZW, 8, {2, 1}, C(d(rng), d(rng)));
        VerticalSection perturbed(lambda.coeff + quad);
        SectionK phi(2, random_series(rng, ZW, 8));
        Complex base = pairing::lp_pairing(lambda, phi).coefficient({1});
        Complex pert = pairing::lp_pairing(perturbed, phi).coefficient({1});
        REQUIRE(base == pert);
    }
}

TEST_CASE("series reversion inverts the coordinate change") {
    Series F = univ("z", 6, {C(1), C(1)}); // z + z^2
    Series z_of_u = pairing::revert(F);
    REQUIRE(z_of_u.coefficient({1}) == C(1));
    REQUIRE(z_of_u.coefficient({2}) == C(-1));
    REQUIRE(z_of_u.coefficient({3}) == C(2));
    REQUIRE(z_of_u.coefficient({4}) == C(-5));
    REQUIRE(z_of_u.coefficient({5}) == C(14));
    Series check = F.compose({{"z", z_of_u}});
    REQUIRE(check.coefficient({1}) == C(1));
    for (int k = 2; k <= check.trunc(); ++k) REQUIRE(std::abs(check.coefficient({k})) <= 1e-12);
}

TEST_CASE("logarithmic derivative ratio starts at one") {
    Series z_of_u = pairing::revert(univ("z", 6, {C(1), C(1)}));
    Series A = pairing::log_derivative_ratio(z_of_u);
    REQUIRE(A.constant_term() == C(1));
    // z(u) = u - u^2 + ... gives A = (1 - 2u + ...)/(1 - u + ...) = 1 - u - u^2 - ...
    REQUIRE(std::abs(A.coefficient({1}) - C(-1)) <= 1e-12);
}

TEST_CASE("comparison formula fixtures: identity plumbing") {
    CoordinateChange identity(univ("z", 6, {C(1)}), univ("w", 6, {C(1)}));
    SectionK phi(2, mono(ZW, 6, {1, 1}, C(1)));

    auto printed = pairing::compplum_closed_form(identity, phi);
    REQUIRE(printed.method == Method::closed_form);
    REQUIRE(std::abs(printed.value - C(-kPi)) <= 1e-15);

    auto oracle = pairing::compplum_coordinate_oracle(identity, phi);
    REQUIRE(oracle.method == Method::coordinate_change_oracle);
    REQUIRE(std::abs(oracle.value - C(-4.0 * kPi)) <= 1e-12);

    auto fd = pairing::compplum_finite_difference(identity, phi);
    REQUIRE(fd.method == Method::finite_difference);
    REQUIRE(std::abs(fd.value - C(-4.0 * kPi)) <= 1e-9 * 4.0 * kPi);

    // the identity-chart limit is the same number the model-level limit gives
    REQUIRE(std::abs(oracle.value - pairing::plumbing_pairing_limit_value(phi)) <= 1e-12);
}

TEST_CASE("comparison oracles agree on random coordinate changes") {
    std::mt19937 rng(101);
    std::uniform_real_distribution<double> u(-0.5, 0.5);
    for (int trial = 0; trial < 8; ++trial) {
        Complex alpha(1.0 + 0.5 * u(rng), 0.5 * u(rng));
        Complex gamma(1.0 + 0.5 * u(rng), 0.5 * u(rng));
        Series F = univ("z", 6, {alpha, C(u(rng), u(rng)), C(u(rng), u(rng))});
        Series G = univ("w", 6, {gamma, C(u(rng), u(rng)), C(u(rng), u(rng))});
        CoordinateChange change(F, G);
        Series phi = mono(ZW, 6, {1, 0}, C(u(rng), u(rng))) + mono(ZW, 6, {0, 1}, C(u(rng), u(rng))) +
                     mono(ZW, 6, {1, 1}, C(1.0 + u(rng), u(rng))) + mono(ZW, 6, {2, 1}, C(u(rng), u(rng)));
        SectionK section(2, phi);
        auto oracle = pairing::compplum_coordinate_oracle(change, section);
        auto fd = pairing::compplum_finite_difference(change, section);
        double scale = std::max(1.0, std::abs(oracle.value));
        REQUIRE(std::abs(oracle.value - fd.value) <= 1e-6 * scale);
    }
}

TEST_CASE("comparison oracle respects the normal cocycle scaling") {
    std::mt19937 rng(103);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        Complex alpha(1.5 + u(rng), u(rng));
        Complex gamma(1.5 + u(rng), u(rng));
        CoordinateChange change(univ("z", 4, {alpha}), univ("w", 4, {gamma}));
        REQUIRE(pairing::normal_cocycle(change) == C(1) / (alpha * gamma));
        SectionK phi(2, mono(ZW, 4, {1, 1}, C(1)));
        auto oracle = pairing::compplum_coordinate_oracle(change, phi);
        REQUIRE(std::abs(oracle.value * alpha * gamma - C(-4.0 * kPi)) <= 1e-12 * 4.0 * kPi);
    }
}

TEST_CASE("finite-difference oracle validates its tau sequence") {
    CoordinateChange identity(univ("z", 4, {C(1)}), univ("w", 4, {C(1)}));
    SectionK phi(2, mono(ZW, 4, {1, 1}, C(1)));
    REQUIRE_THROWS_AS(pairing::compplum_finite_difference(identity, phi, {1e-2}), domain_error);
    REQUIRE_THROWS_AS(pairing::compplum_finite_difference(identity, phi, {1e-2, 2e-2}), domain_error);
    REQUIRE_THROWS_AS(pairing::compplum_finite_difference(identity, phi, {1e-2, -1e-3}), domain_error);
    REQUIRE_THROWS_AS(pairing::compplum_finite_difference(identity, phi, {0.5, 0.25}), domain_error);
}

TEST_CASE("compplum rejects sections with nonvanishing residue") {
    CoordinateChange identity(univ("z", 6, {C(1)}), univ("w", 6, {C(1)}));
    SectionK bad(2, Series::constant(ZW, 6, C(1)));
    REQUIRE_THROWS_AS(pairing::compplum_closed_form(identity, bad), domain_error);
    REQUIRE_THROWS_AS(pairing::compplum_coordinate_oracle(identity, bad), domain_error);
    REQUIRE_THROWS_AS(pairing::compplum_finite_difference(identity, bad), domain_error);
}

TEST_CASE("collar length and norm follow the leading-order formulas") {
    double L = pairing::collar_length(C(std::exp(-2.0 * kPi * kPi)));
    REQUIRE(std::abs(L - 1.0) <= 1e-12);
    REQUIRE(pairing::collar_norm(C(0.5), C(1.0)) == 2.0);
    REQUIRE_THROWS_AS(pairing::collar_length(C(0)), domain_error);
    REQUIRE_THROWS_AS(pairing::collar_length(C(1)), domain_error);
    REQUIRE_THROWS_AS(pairing::collar_norm(C(1.5), C(1)), domain_error);
}
