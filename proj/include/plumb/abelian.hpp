#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <vector>

#include "plumb/errors.hpp"
#include "plumb/model.hpp"
#include "plumb/pairing.hpp"
#include "plumb/series.hpp"

// The genus-one abelian-differential example: a relative 1-form with node
// germ (1/(4 pi i)) (dz/z - dw/w) whose period around the vanishing cycle is
// P(t) = p_hat + log(t)/(2 pi i). The derivative of the modular invariant
// e^{2 pi i P} is computed once directly and once through the plumbing
// pairing of the squared section; the two must agree.
namespace plumb::abelian {

using model::kPi;
using model::SectionK;

struct PeriodModel {
    SectionK omega_local; // weight 1, coefficient exactly 1/(4 pi i)
    Complex p_hat;        // t-independent part of the period, opaque here
    Complex t;

    PeriodModel(Complex p_hat_, Complex t_, int trunc = 4)
        : omega_local(1, Series::constant({"z", "w"}, trunc, Complex(0.0, -1.0 / (4.0 * kPi)))),
          p_hat(p_hat_),
          t(t_) {
        if (std::abs(t) <= Series::kStructuralZero)
            throw domain_error("the period has a logarithmic singularity at t = 0");
    }
};

// P(t) = p_hat + log(t) / (2 pi i), principal branch.
inline Complex period(const PeriodModel& m) {
    return m.p_hat + std::log(m.t) / Complex(0.0, 2.0 * kPi);
}

struct DerivativeComparison {
    Complex direct; // d/dt e^{2 pi i P} = e^{2 pi i p_hat}
    Complex chain;  // e^{2 pi i P} * 2 pi i * (d/dt, -2i omega^2)
    double rel_error;
};

// The t-derivative of e^{2 pi i P(t)} both ways. The chain route squares the
// section, scales by -2i and hands the Laurent extraction to the model-family
// pairing instead of using the known coefficient.
inline DerivativeComparison derivative_two_ways(const PeriodModel& m, const model::ModelFamily& family = {}) {
    Complex two_pi_i(0.0, 2.0 * kPi);
    Complex direct = std::exp(two_pi_i * m.p_hat);
    SectionK squared = model::section_mul(m.omega_local, m.omega_local);
    SectionK scaled(squared.k, squared.coeff.scaled(Complex(0.0, -2.0)));
    Complex dP = pairing::plumbing_pairing(scaled, m.t, family);
    Complex chain = std::exp(two_pi_i * period(m)) * two_pi_i * dP;
    double denom = std::abs(direct);
    DerivativeComparison r{direct, chain, 0.0};
    r.rel_error = denom > 0.0 ? std::abs(chain - direct) / denom : std::abs(chain - direct);
    return r;
}

struct DtIdentityReport {
    Complex section_coefficient;   // the zw-coefficient 4 pi * (-1/(16 pi^2)) = -1/(4 pi)
    double coefficient_error;      // deviation from -1/(4 pi)
    double laur_error;             // deviation of the Laur t-coefficient from -1/pi
    bool residue_vanishes;
    double max_pairing_error;      // max |(d/dt, section) - 1| over the probe points
    double max_scaling_error;      // max |(d/dt, c * section) - c| for a fixed probe c
    bool passed;
};

// The cotangent representative of dt: 4 pi t omega^2, which in the node chart
// is the weight-2 section with coefficient (-1/(4 pi)) zw. Its Laur is
// (-1/pi) t, so the plumbing pairing against d/dt is identically 1.
inline DtIdentityReport dt_identity(int trunc = 4) {
    DtIdentityReport rep{};
    Complex target(-1.0 / (4.0 * kPi), 0.0);
    Complex omega2_coeff = Complex(0.0, -1.0 / (4.0 * kPi)) * Complex(0.0, -1.0 / (4.0 * kPi));
    rep.section_coefficient = 4.0 * kPi * omega2_coeff;
    rep.coefficient_error = std::abs(rep.section_coefficient - target);
    SectionK dt_section(2, Series::monomial({"z", "w"}, trunc, {1, 1}, rep.section_coefficient));
    Series l = model::laur(dt_section);
    rep.laur_error = std::abs(l.coefficient({1}) - Complex(-1.0 / kPi, 0.0));
    rep.residue_vanishes = model::vanishing_residue_check(dt_section);
    const std::array<Complex, 5> probes = {Complex(0.5, 0.0), Complex(0.0, 0.3), Complex(-0.2, 0.1),
                                           Complex(1e-3, 1e-3), Complex(0.125, 0.2)};
    const Complex c(2.0, -3.0);
    SectionK scaled(2, dt_section.coeff.scaled(c));
    rep.max_pairing_error = 0.0;
    rep.max_scaling_error = 0.0;
    for (Complex t : probes) {
        Complex p = pairing::plumbing_pairing(dt_section, t);
        Complex pc = pairing::plumbing_pairing(scaled, t);
        rep.max_pairing_error = std::max(rep.max_pairing_error, std::abs(p - Complex(1.0, 0.0)));
        rep.max_scaling_error = std::max(rep.max_scaling_error, std::abs(pc - c));
    }
    // the coefficient identities hold exactly in rationals-times-pi; in
    // doubles the product 4*pi * 1/(16 pi^2) can sit an ulp off -1/(4 pi)
    rep.passed = rep.coefficient_error <= 1e-16 && rep.laur_error <= 1e-16 && rep.residue_vanishes &&
                 rep.max_pairing_error <= 1e-14 && rep.max_scaling_error <= 1e-13;
    return rep;
}

} // namespace plumb::abelian
