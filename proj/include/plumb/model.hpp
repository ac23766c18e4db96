#pragma once

#include <cmath>
#include <map>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "plumb/errors.hpp"
#include "plumb/series.hpp"
#include "plumb/series_json.hpp"

// The local model family pi(z,w) = zw = t on a polydisc, its vertical line
// bundle and powers of the relative dualizing sheaf. Sections are carried by
// their coefficient series; the first two variables of the coefficient are
// always the node-chart pair, any further variables are base parameters.
namespace plumb::model {

inline constexpr double kPi = std::numbers::pi;

// f(z,w,s) * (dz/z - dw/w)^k
struct SectionK {
    int k;
    Series coeff;

    SectionK(int k_, Series coeff_) : k(k_), coeff(std::move(coeff_)) {
        if (k < 0) throw domain_error("section weight must be non-negative, got " + std::to_string(k));
        if (coeff.var_count() < 2)
            throw domain_error("section coefficient needs the two node-chart variables, got " + coeff.var_list());
        for (std::size_t i = 0; i < 2; ++i)
            if (coeff.lower()[i] < 0)
                throw domain_error("section coefficient must be regular (non-negative exponents) in '" +
                                   coeff.vars()[i] + "'");
    }

    const std::string& zvar() const { return coeff.vars()[0]; }
    const std::string& wvar() const { return coeff.vars()[1]; }
};

// g(z,w,s) * (1/2)(z d/dz - w d/dw)
struct VerticalSection {
    Series coeff;

    explicit VerticalSection(Series coeff_) : coeff(std::move(coeff_)) {
        if (coeff.var_count() < 2)
            throw domain_error("vertical section coefficient needs the two node-chart variables, got " +
                               coeff.var_list());
        for (std::size_t i = 0; i < 2; ++i)
            if (coeff.lower()[i] < 0)
                throw domain_error("vertical section coefficient must be regular in '" + coeff.vars()[i] + "'");
    }
};

// V = {|z| < c, |w| < c'} fibered over the disc {|t| < c*c'}. The radii only
// gate numeric evaluation; the series calculus is formal.
struct ModelFamily {
    double c = 1.0;
    double c_prime = 1.0;

    ModelFamily() = default;
    ModelFamily(double c_, double cp) : c(c_), c_prime(cp) {
        if (c <= 0 || c_prime <= 0) throw domain_error("model radii must be positive");
    }

    void require_in_base(Complex t) const {
        if (std::abs(t) >= c * c_prime)
            throw domain_error("plumbing parameter |t| = " + std::to_string(std::abs(t)) +
                               " is outside the base disc of radius " + std::to_string(c * c_prime));
    }
};

// Contraction of one (dz/z - dw/w) factor against g*(1/2)(z d/dz - w d/dw);
// the 1/2 in the field and the pairing value 2 cancel, leaving g*f.
inline SectionK contract(const VerticalSection& lambda, const SectionK& eta) {
    if (eta.k < 1) throw domain_error("cannot contract a weight-0 section");
    return SectionK(eta.k - 1, lambda.coeff * eta.coeff);
}

inline SectionK section_mul(const SectionK& a, const SectionK& b) {
    return SectionK(a.k + b.k, a.coeff * b.coeff);
}

// Pullback to the annulus fiber by z -> zeta, w -> t/zeta. The result is the
// coefficient of (d zeta/zeta)^k, i.e. 2^k * f(zeta, t/zeta, s). Certified
// degrees in the image are inherited term-by-term; zeta gets lower bound
// -trunc since w^n maps to zeta^{-n}.
inline Series fiber_pullback(const SectionK& eta, const std::string& zeta_name = "zeta",
                             const std::string& t_name = "t") {
    const Series& f = eta.coeff;
    std::vector<std::string> rvars{zeta_name, t_name};
    std::vector<int> rlower{-f.trunc(), 0};
    for (std::size_t i = 2; i < f.var_count(); ++i) {
        if (f.vars()[i] == zeta_name || f.vars()[i] == t_name)
            throw domain_error("pullback variable name '" + f.vars()[i] + "' collides with a base parameter");
        rvars.push_back(f.vars()[i]);
        rlower.push_back(f.lower()[i]);
    }
    Series r(rvars, f.trunc(), rlower);
    double scale = std::ldexp(1.0, eta.k); // 2^k
    for (const auto& [e, c] : f.terms()) {
        Series::Exponents out(rvars.size(), 0);
        out[0] = e[0] - e[1];
        out[1] = e[1];
        for (std::size_t i = 2; i < e.size(); ++i) out[i] = e[i];
        r = r + Series::monomial(rvars, f.trunc(), std::move(out), c * scale, rlower);
    }
    return r;
}

struct BranchRestriction {
    Series z_branch; // f(z, 0, s) as coefficient of (dz/z)^k
    Series w_branch; // f(0, w, s) as coefficient of (dw/w)^k; carries sign (-1)^k
    int w_branch_sign;
};

inline BranchRestriction restrict_to_branches(const SectionK& eta) {
    const Series& f = eta.coeff;
    std::vector<std::string> zvars{f.vars()[0]};
    std::vector<std::string> wvars{f.vars()[1]};
    std::vector<int> zlower{0}, wlower{0};
    for (std::size_t i = 2; i < f.var_count(); ++i) {
        zvars.push_back(f.vars()[i]);
        wvars.push_back(f.vars()[i]);
        zlower.push_back(f.lower()[i]);
        wlower.push_back(f.lower()[i]);
    }
    Series zb(zvars, f.trunc(), zlower), wb(wvars, f.trunc(), wlower);
    for (const auto& [e, c] : f.terms()) {
        if (e[1] == 0) {
            Series::Exponents out{e[0]};
            out.insert(out.end(), e.begin() + 2, e.end());
            zb = zb + Series::monomial(zvars, f.trunc(), std::move(out), c, zlower);
        }
        if (e[0] == 0) {
            Series::Exponents out{e[1]};
            out.insert(out.end(), e.begin() + 2, e.end());
            wb = wb + Series::monomial(wvars, f.trunc(), std::move(out), c, wlower);
        }
    }
    return BranchRestriction{std::move(zb), std::move(wb), eta.k % 2 == 0 ? 1 : -1};
}

// f(0,0,s) as a series in the base parameters. For odd k this is the z-branch
// representative; the w-branch value is (-1)^k times it.
inline Series residue_at_node(const SectionK& eta) {
    const Series& f = eta.coeff;
    std::vector<std::string> rvars(f.vars().begin() + 2, f.vars().end());
    std::vector<int> rlower(f.lower().begin() + 2, f.lower().end());
    Series r(rvars, f.trunc(), rlower);
    for (const auto& [e, c] : f.terms()) {
        if (e[0] != 0 || e[1] != 0) continue;
        Series::Exponents out(e.begin() + 2, e.end());
        r = r + Series::monomial(rvars, f.trunc(), std::move(out), c, rlower);
    }
    return r;
}

// Residue as a number, for sections without base parameters.
inline Complex residue_value(const SectionK& eta) {
    Series r = residue_at_node(eta);
    if (r.var_count() != 0)
        throw domain_error("residue is a series in " + r.var_list() + "; evaluate the base parameters first");
    return r.is_zero() ? Complex(0.0, 0.0) : r.constant_term();
}

inline bool vanishing_residue_check(const SectionK& eta) {
    if (eta.k != 2) throw domain_error("the vanishing-residue test is defined for weight 2, got k=" +
                                       std::to_string(eta.k));
    return residue_at_node(eta).is_zero();
}

// Weight-k zeta-constant 2^k sum a_mm(s) t^m, the rotation-invariant part of
// the fiber pullback. Certified t-order is floor(trunc/2).
inline Series zeta_constant(const SectionK& eta, const std::string& t_name = "t") {
    double scale = std::ldexp(1.0, eta.k);
    return eta.coeff.diagonal(eta.zvar(), eta.wvar(), t_name).scaled(Complex(scale, 0.0));
}

// Laur(eta) = 4 sum a_mm(s) t^m, defined for weight 2 only.
inline Series laur(const SectionK& eta, const std::string& t_name = "t") {
    if (eta.k != 2) throw domain_error("Laur is defined for weight-2 sections only, got k=" + std::to_string(eta.k));
    return zeta_constant(eta, t_name);
}

// Numeric zeta-constant of the fiber pullback: discrete mean of the pulled
// back coefficient over N equispaced points on |zeta| = radius. Exact for the
// trigonometric polynomial left by truncation once N > 2*trunc.
inline Complex contour_zeta_constant(const SectionK& eta, Complex t, double radius = 0.3, int n_points = 0,
                                     const std::map<std::string, Complex>& base_point = {},
                                     const ModelFamily& family = {}) {
    family.require_in_base(t);
    if (radius <= 0 || radius >= family.c)
        throw domain_error("contour radius must lie in (0, c)");
    if (std::abs(t) / radius >= family.c_prime)
        throw domain_error("contour at radius " + std::to_string(radius) + " leaves the fiber annulus for |t| = " +
                           std::to_string(std::abs(t)));
    if (n_points <= 0) n_points = 2 * eta.coeff.trunc() + 5;
    Series pulled = fiber_pullback(eta);
    Complex acc(0.0, 0.0);
    for (int j = 0; j < n_points; ++j) {
        double theta = 2.0 * kPi * j / n_points;
        Complex zeta = std::polar(radius, theta);
        std::map<std::string, Complex> pt = base_point;
        pt["zeta"] = zeta;
        pt["t"] = t;
        acc += pulled.eval(pt);
    }
    return acc / static_cast<double>(n_points);
}

} // namespace plumb::model
