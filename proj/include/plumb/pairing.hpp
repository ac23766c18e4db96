#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "plumb/errors.hpp"
#include "plumb/model.hpp"
#include "plumb/series.hpp"

// The plumbing-tangent pairing, the admissible-loop Laurent pairing LP, the
// coordinate-comparison formula with its two independent oracles, the normal
// cocycle and the collar norm.
namespace plumb::pairing {

using model::kPi;
using model::SectionK;
using model::VerticalSection;

// Plumbing by F(z)G(w) = tau for univariate coordinate changes with
// F(0) = G(0) = 0 and nonzero linear terms.
struct CoordinateChange {
    Series F; // univariate in the z-side chart variable
    Series G; // univariate in the w-side chart variable

    CoordinateChange(Series F_, Series G_) : F(std::move(F_)), G(std::move(G_)) {
        validate(F, "F");
        validate(G, "G");
    }

    Complex alpha() const { return lin(F); }           // F'(0)
    Complex beta() const { return quad(F); }           // F''(0)/2
    Complex gamma() const { return lin(G); }           // G'(0)
    Complex delta() const { return quad(G); }          // G''(0)/2

private:
    static void validate(const Series& s, const char* name) {
        if (s.var_count() != 1)
            throw domain_error(std::string(name) + " must be univariate, got " + s.var_list());
        if (s.lower()[0] < 0) throw domain_error(std::string(name) + " must be a power series");
        if (std::abs(s.constant_term()) > Series::kStructuralZero)
            throw domain_error(std::string(name) + "(0) must vanish");
        if (s.trunc() < 1 || std::abs(lin(s)) <= Series::kStructuralZero)
            throw domain_error(std::string(name) + " needs a nonzero linear term");
    }
    static Complex lin(const Series& s) { return s.coefficient({1}); }
    static Complex quad(const Series& s) { return s.trunc() >= 2 ? s.coefficient({2}) : Complex(0.0, 0.0); }
};

enum class Method { closed_form, coordinate_change_oracle, finite_difference };

inline const char* method_name(Method m) {
    switch (m) {
        case Method::closed_form: return "closed_form";
        case Method::coordinate_change_oracle: return "coordinate_change_oracle";
        case Method::finite_difference: return "finite_difference";
    }
    return "unknown";
}

// Every pairing number carries the method that produced it.
struct PairingResult {
    Complex value;
    Method method;
};

// (d/dt, eta) = (-pi/t) * Laur(eta) evaluated at t.
inline Complex plumbing_pairing(const SectionK& eta, Complex t, const model::ModelFamily& family = {}) {
    if (std::abs(t) <= Series::kStructuralZero)
        throw domain_error("plumbing pairing has a pole at t = 0; use the vanishing-residue limit");
    family.require_in_base(t);
    Series l = model::laur(eta);
    std::map<std::string, Complex> pt{{"t", t}};
    if (l.var_count() != 1)
        throw domain_error("pairing value is a series in " + l.var_list() + "; evaluate the base parameters first");
    return (-kPi / t) * l.eval(pt);
}

// t -> 0 limit for vanishing-residue sections: -pi times the t-linear
// coefficient of Laur, i.e. -4*pi*a_11(s). Returned as a series in the base
// parameters (constant when there are none).
inline Series plumbing_pairing_limit(const SectionK& eta) {
    if (!model::vanishing_residue_check(eta)) {
        Series res = model::residue_at_node(eta);
        std::string msg = "the t -> 0 pairing limit needs a vanishing residue; residue ";
        if (res.var_count() == 0)
            msg += "= " + std::to_string(res.constant_term().real()) + (res.constant_term().imag() >= 0 ? "+" : "") +
                   std::to_string(res.constant_term().imag()) + "i";
        else
            msg += "is a nonzero series in " + res.var_list();
        throw domain_error(msg);
    }
    Series l = model::laur(eta);
    // extract the t-linear coefficient as a series in the remaining variables
    std::vector<std::string> rvars(l.vars().begin() + 1, l.vars().end());
    std::vector<int> rlower(l.lower().begin() + 1, l.lower().end());
    int rtrunc = std::max(0, l.trunc() - 1);
    Series out(rvars, rtrunc, rlower);
    for (const auto& [e, c] : l.terms()) {
        if (e[0] != 1) continue;
        Series::Exponents rest(e.begin() + 1, e.end());
        if (Series::total_degree(rest) > rtrunc) continue;
        out = out + Series::monomial(rvars, rtrunc, std::move(rest), c * Complex(-kPi, 0.0), rlower);
    }
    return out;
}

inline Complex plumbing_pairing_limit_value(const SectionK& eta) {
    Series s = plumbing_pairing_limit(eta);
    if (s.var_count() != 0)
        throw domain_error("pairing limit is a series in " + s.var_list() + "; evaluate the base parameters first");
    return s.is_zero() ? Complex(0.0, 0.0) : s.constant_term();
}

// Dual of a weight-1 section with invertible coefficient: f*(dz/z - dw/w)
// corresponds to the vertical section with coefficient 1/f, and conversely.
inline VerticalSection dual_vertical(const SectionK& eta) {
    if (eta.k != 1) throw domain_error("the vertical dual is defined for weight 1, got k=" + std::to_string(eta.k));
    if (std::abs(eta.coeff.constant_term()) <= Series::kStructuralZero)
        throw domain_error("no dual: section coefficient has zero constant term, reciprocal does not exist");
    return VerticalSection(eta.coeff.reciprocal());
}

inline SectionK dual_section(const VerticalSection& lambda) {
    if (std::abs(lambda.coeff.constant_term()) <= Series::kStructuralZero)
        throw domain_error("no dual: vertical coefficient has zero constant term, reciprocal does not exist");
    return SectionK(1, lambda.coeff.reciprocal());
}

// Residue of the dual weight-1 section, 1/g(0,0,s) at the base origin.
inline Complex adjoint_residue(const VerticalSection& lambda) {
    return dual_section(lambda).coeff.constant_term();
}

// A vertical section is admissible when its dual has limit period 4*pi*i,
// equivalently g(0,0,s) = 1 identically.
inline bool admissible_check(const VerticalSection& lambda) {
    Series g00 = model::residue_at_node(SectionK(1, lambda.coeff));
    if (g00.is_zero()) throw domain_error("admissibility needs a nonzero constant term in the vertical coefficient");
    Series dev = g00 - Series::constant(g00.vars(), g00.trunc(), Complex(1.0, 0.0), g00.lower());
    return dev.is_zero();
}

// LP(lambda, phi) = (1/(pi*i)) * loop integral of the contraction: twice the
// zeta-constant of the weight-1 pullback coefficient, as a series in t.
inline Series lp_pairing(const VerticalSection& lambda, const SectionK& phi, const std::string& t_name = "t") {
    if (phi.k != 2) throw domain_error("LP pairing is defined for weight-2 sections, got k=" + std::to_string(phi.k));
    if (!admissible_check(lambda)) throw domain_error("LP pairing requires an admissible vertical section");
    SectionK contracted = model::contract(lambda, phi);
    return model::zeta_constant(contracted, t_name).scaled(Complex(2.0, 0.0));
}

// Numeric LP at one t through the contour mean on |zeta| = radius.
inline Complex lp_pairing_numeric(const VerticalSection& lambda, const SectionK& phi, Complex t, double radius = 0.3,
                                  int n_points = 0, const model::ModelFamily& family = {}) {
    if (phi.k != 2) throw domain_error("LP pairing is defined for weight-2 sections, got k=" + std::to_string(phi.k));
    if (!admissible_check(lambda)) throw domain_error("LP pairing requires an admissible vertical section");
    SectionK contracted = model::contract(lambda, phi);
    return 2.0 * model::contour_zeta_constant(contracted, t, radius, n_points, {}, family);
}

// Printed comparison formula, evaluated verbatim from the jet data:
// pi * (F'(0)G'(0))^-2 * (-F'(0)G'(0) f_zw + (1/2)F''(0) f_w + (1/2)G''(0) f_z).
inline PairingResult compplum_closed_form(const CoordinateChange& change, const SectionK& phi) {
    if (!model::vanishing_residue_check(phi))
        throw domain_error("the comparison formula applies to vanishing-residue sections");
    const Series& f = phi.coeff;
    std::size_t nv = f.var_count();
    auto unit = [&](std::size_t i) {
        Series::Exponents e(nv, 0);
        e[i] = 1;
        return e;
    };
    Series::Exponents ezw(nv, 0);
    ezw[0] = 1;
    ezw[1] = 1;
    Complex fz = f.coefficient(unit(0));
    Complex fw = f.coefficient(unit(1));
    Complex fzw = f.coefficient(ezw);
    Complex ag = change.alpha() * change.gamma();
    Complex value = kPi / (ag * ag) * (-ag * fzw + change.beta() * fw + change.delta() * fz);
    return PairingResult{value, Method::closed_form};
}

// Series reversion z(u) with F(z(u)) = u, by fixed-point iteration gaining one
// order per pass.
inline Series revert(const Series& F) {
    Complex a = F.coefficient({1});
    int T = F.trunc();
    const std::string& v = F.vars()[0];
    Series u = Series::variable(F.vars(), T, v);
    Series z = u.scaled(Complex(1.0, 0.0) / a);
    for (int i = 0; i < T + 1; ++i) {
        Series fz = F.compose({{v, z}});
        z = z + (u - fz).scaled(Complex(1.0, 0.0) / a);
    }
    return z;
}

// A(u) = u * z'(u) / z(u) for the reverted coordinate; constant term 1.
inline Series log_derivative_ratio(const Series& z_of_u) {
    Series num = z_of_u.partial(z_of_u.vars()[0]);
    Series den = z_of_u.divided_by_var(z_of_u.vars()[0]); // z/u, a unit
    return num * den.reciprocal();
}

// Honest change-of-coordinates oracle: rewrite phi in (u,v) = (F(z), G(w))
// modulo the fiber relation and return -4*pi times the uv-coefficient.
inline PairingResult compplum_coordinate_oracle(const CoordinateChange& change, const SectionK& phi) {
    if (!model::vanishing_residue_check(phi))
        throw domain_error("the comparison oracle applies to vanishing-residue sections");
    if (phi.coeff.trunc() < 3)
        throw domain_error("comparison oracle needs truncation >= 3, got " + std::to_string(phi.coeff.trunc()));
    const Series& f = phi.coeff;
    int T = f.trunc();
    // work in the chart names u, v plus the section's base parameters
    std::vector<std::string> uv{"u", "v"};
    for (std::size_t i = 2; i < f.var_count(); ++i) {
        if (f.vars()[i] == "u" || f.vars()[i] == "v")
            throw domain_error("base parameter name '" + f.vars()[i] + "' collides with the oracle chart names");
        uv.push_back(f.vars()[i]);
    }
    std::vector<int> uvlower(uv.size(), 0);
    for (std::size_t i = 2; i < f.var_count(); ++i) uvlower[i] = f.lower()[i];

    Series Fu = change.F.renamed({"u"}).truncated(std::min(T, change.F.trunc()));
    Series Gv = change.G.renamed({"v"}).truncated(std::min(T, change.G.trunc()));
    Series zu = revert(Fu.trunc() < T ? Fu : Fu.truncated(T));
    Series wv = revert(Gv.trunc() < T ? Gv : Gv.truncated(T));
    Series A = log_derivative_ratio(zu).embed(uv);
    Series B = log_derivative_ratio(wv).embed(uv);

    std::map<std::string, Series> assign;
    assign.emplace(f.vars()[0], zu.embed(uv));
    assign.emplace(f.vars()[1], wv.embed(uv));
    for (std::size_t i = 2; i < f.var_count(); ++i)
        assign.emplace(f.vars()[i], Series::variable(uv, std::min(zu.trunc(), wv.trunc()), f.vars()[i], uvlower));
    Series fz = f.compose(assign);

    Series half_sum = (A + B).scaled(Complex(0.5, 0.0));
    Series q = fz * half_sum * half_sum;
    Series::Exponents e11(uv.size(), 0);
    e11[0] = 1;
    e11[1] = 1;
    Complex a11 = q.coefficient(e11);
    return PairingResult{Complex(-4.0 * kPi, 0.0) * a11, Method::coordinate_change_oracle};
}

inline Complex normal_cocycle(const CoordinateChange& change) {
    return Complex(1.0, 0.0) / (change.alpha() * change.gamma());
}

// Finite-difference oracle: the proof's dual section eta-dual with
// coefficient 1 - (beta/alpha) z - (delta/gamma) w (second order, exactly as
// the expansion is cut there), LP evaluated numerically on zw-fibers at
// t = tau * normal cocycle, and -pi*LP/tau extrapolated to tau -> 0 by
// Neville's scheme (Richardson on a geometric sequence).
inline PairingResult compplum_finite_difference(const CoordinateChange& change, const SectionK& phi,
                                                std::vector<double> tau_sequence = {1e-2, 5e-3, 2.5e-3},
                                                const model::ModelFamily& family = {}) {
    if (!model::vanishing_residue_check(phi))
        throw domain_error("the finite-difference oracle applies to vanishing-residue sections");
    if (tau_sequence.size() < 2) throw domain_error("need at least two tau values to extrapolate");
    for (std::size_t i = 0; i < tau_sequence.size(); ++i) {
        if (tau_sequence[i] <= 0) throw domain_error("tau sequence must be positive");
        if (i && tau_sequence[i] >= tau_sequence[i - 1])
            throw domain_error("tau sequence must be strictly decreasing");
    }
    const Series& f = phi.coeff;
    Complex ba = change.beta() / change.alpha();
    Complex dg = change.delta() / change.gamma();
    Series g = Series::constant(f.vars(), f.trunc(), Complex(1.0, 0.0), f.lower()) -
               Series::variable(f.vars(), f.trunc(), f.vars()[0], f.lower()).scaled(ba) -
               Series::variable(f.vars(), f.trunc(), f.vars()[1], f.lower()).scaled(dg);
    VerticalSection lambda(g);
    Complex cocycle = normal_cocycle(change);
    const double radius = 0.3;
    std::vector<Complex> vals;
    for (double tau : tau_sequence) {
        Complex t = tau * cocycle;
        if (std::abs(t) >= radius * radius)
            throw domain_error("tau = " + std::to_string(tau) + " leaves the contour validity disc (|t| = " +
                               std::to_string(std::abs(t)) + " >= " + std::to_string(radius * radius) + ")");
        Complex lp = lp_pairing_numeric(lambda, phi, t, radius, 0, family);
        vals.push_back(-kPi * lp / tau);
    }
    // Neville extrapolation to tau = 0; -pi*LP/tau is polynomial in tau
    std::vector<Complex> p = vals;
    const std::vector<double>& x = tau_sequence;
    for (std::size_t level = 1; level < p.size(); ++level)
        for (std::size_t i = 0; i + level < p.size(); ++i)
            p[i] = p[i + 1] + (p[i] - p[i + 1]) * (0.0 - x[i + level]) / (x[i] - x[i + level]);
    return PairingResult{p[0], Method::finite_difference};
}

inline double collar_length(Complex t) {
    double a = std::abs(t);
    if (a <= 0.0 || a >= 1.0) throw domain_error("collar length needs 0 < |t| < 1");
    return 2.0 * kPi * kPi / std::log(1.0 / a);
}

// Conormal norm under the leading-order length expansion: |lp| / |t|.
inline double collar_norm(Complex t, Complex lp_value) {
    double a = std::abs(t);
    if (a <= 0.0 || a >= 1.0) throw domain_error("collar norm needs 0 < |t| < 1");
    return std::abs(lp_value) / a;
}

} // namespace plumb::pairing
