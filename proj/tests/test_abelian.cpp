#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <vector>

#include "plumb/abelian.hpp"

using plumb::Complex;
using plumb::Series;
using plumb::domain_error;
namespace abelian = plumb::abelian;
namespace model = plumb::model;
using model::kPi;

namespace {
Complex C(double re, double im = 0.0) { return Complex(re, im); }
} // namespace

TEST_CASE("the period is p-hat plus the normalized logarithm") {
    abelian::PeriodModel unit(C(0), C(1));
    REQUIRE(abelian::period(unit) == C(0));

    abelian::PeriodModel quarter(C(0), C(0, 1)); // t = e^{2 pi i / 4}
    REQUIRE(std::abs(abelian::period(quarter) - C(0.25)) <= 1e-16);

    REQUIRE_THROWS_AS(abelian::PeriodModel(C(0), C(0)), domain_error);
}

TEST_CASE("the period is additive in p-hat and exponentiates to a multiple of t") {
    const Complex a(0.7, -0.4);
    const Complex t(0.3, 0.2);
    abelian::PeriodModel shifted(a, t), base(C(0), t);
    REQUIRE(std::abs(abelian::period(shifted) - abelian::period(base) - a) <= 1e-15);

    Complex two_pi_i(0.0, 2.0 * kPi);
    Complex lhs = std::exp(two_pi_i * abelian::period(shifted));
    Complex rhs = std::exp(two_pi_i * a) * t;
    REQUIRE(std::abs(lhs - rhs) <= 1e-14 * std::abs(rhs));
}

TEST_CASE("the local form carries coefficient 1/(4 pi i) at weight one") {
    abelian::PeriodModel m(C(0.2), C(0.5));
    REQUIRE(m.omega_local.k == 1);
    REQUIRE(m.omega_local.coeff.coefficient({0, 0}) == Complex(0.0, -1.0 / (4.0 * kPi)));

    model::SectionK squared = model::section_mul(m.omega_local, m.omega_local);
    REQUIRE(squared.k == 2);
    REQUIRE(std::abs(squared.coeff.coefficient({0, 0}) - Complex(-1.0 / (16.0 * kPi * kPi), 0.0)) <= 1e-17);
    // Laur of the squared-and-scaled section is the constant i/(2 pi^2)
    model::SectionK scaled(2, squared.coeff.scaled(C(0, -2)));
    Series l = model::laur(scaled);
    REQUIRE(std::abs(l.coefficient({0}) - C(0, 0.5 / (kPi * kPi))) <= 2e-16);
}

TEST_CASE("both derivative routes agree at scattered points") {
    for (Complex p_hat : {C(0), C(0.4), C(-0.3, 0.2)}) {
        for (Complex t : {C(0.5), C(1e-6, 1e-6), C(-0.01, 0.2), C(0.1, -0.3)}) {
            abelian::PeriodModel m(p_hat, t);
            abelian::DerivativeComparison cmp = abelian::derivative_two_ways(m);
            REQUIRE(cmp.direct == std::exp(Complex(0.0, 2.0 * kPi) * p_hat));
            REQUIRE(cmp.rel_error <= 1e-13);
        }
    }
}

TEST_CASE("both derivative routes agree on a log-radial grid") {
    for (int i : {0, 3, 5, 7}) {
        double r = 1e-6 * std::pow(0.5 / 1e-6, i / 7.0);
        for (int j = 0; j < 8; ++j) {
            double phase = (2 * j + 1) * kPi / 8.0;
            Complex t = std::polar(r, phase);
            for (Complex p_hat : {C(0), C(0.6, -0.1)}) {
                abelian::DerivativeComparison cmp = abelian::derivative_two_ways(abelian::PeriodModel(p_hat, t));
                REQUIRE(cmp.rel_error <= 1e-13);
            }
        }
    }
}

TEST_CASE("the dt representative pairs to one across probes") {
    abelian::DtIdentityReport rep = abelian::dt_identity();
    REQUIRE(std::abs(rep.section_coefficient - C(-1.0 / (4.0 * kPi))) <= 1e-16);
    REQUIRE(rep.coefficient_error <= 1e-16);
    REQUIRE(rep.laur_error <= 1e-16);
    REQUIRE(rep.residue_vanishes);
    REQUIRE(rep.max_pairing_error <= 1e-14);
    REQUIRE(rep.max_scaling_error <= 1e-13);
    REQUIRE(rep.passed);
}
