#pragma once

#include <array>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "plumb/errors.hpp"
#include "plumb/model.hpp"
#include "plumb/pairing.hpp"
#include "plumb/series.hpp"
#include "plumb/weierstrass.hpp"

// The genus-two worked example: an elliptic curve E_tau joined to a sphere
// at one node, the sphere carrying a second self-node. Three weight-2
// sections are built as node-chart germs, checked against their residue and
// Laurent tables, and the involution actions and cotangent frame table are
// reproduced.
namespace plumb::elliptic {

using model::SectionK;

// omega_ab = (a-b) dw / ((w-a)(w-b)), residues +1 at a and -1 at b.
struct RationalDifferential {
    Complex a;
    Complex b;
    RationalDifferential(Complex a_, Complex b_) : a(a_), b(b_) {
        if (std::abs(a - b) <= Series::kStructuralZero)
            throw domain_error("rational differential needs two distinct points");
    }
};

inline Complex rational_residue(const RationalDifferential& omega, Complex p) {
    if (std::abs(p - omega.a) <= 1e-12) return Complex(1.0, 0.0);
    if (std::abs(p - omega.b) <= 1e-12) return Complex(-1.0, 0.0);
    return Complex(0.0, 0.0);
}

// Node charts: at the elliptic node n_E the coordinates are (u_E, v_E) =
// (z on E, w on the sphere); at the self-node n_P they are (u_P, v_P) =
// (w+1, w-1). Germs are stored as f(u,v) = f(u,0) + f(0,v) - f(0,0); the
// sections have no cross terms at these nodes.
struct EllipticFamilyGerm {
    Complex tau;
    int trunc;
    WeierstrassData wp;
    SectionK beta_E_at_nE, beta_E_at_nP;
    SectionK beta_P_at_nE, beta_P_at_nP;
    SectionK beta_dz_at_nE, beta_dz_at_nP;
};

namespace detail {

// assemble f(u,0) + f(0,v) - f(0,0) in the chart (uname, vname)
inline Series join_branches(const Series& u_branch, const Series& v_branch, const std::string& uname,
                            const std::string& vname) {
    std::vector<std::string> vars{uname, vname};
    Series fu = u_branch.renamed({uname}).embed(vars);
    Series fv = v_branch.renamed({vname}).embed(vars);
    Complex cu = u_branch.constant_term();
    Complex cv = v_branch.constant_term();
    if (std::abs(cu - cv) > 1e-12)
        throw domain_error("branch constant terms disagree; the germ is not residue matched");
    return fu + fv - Series::constant(vars, std::min(fu.trunc(), fv.trunc()), cu);
}

// 1/(1 - x^2) = sum x^{2j}
inline Series geometric_even(const std::string& var, int trunc) {
    Series one = Series::constant({var}, trunc, Complex(1.0, 0.0));
    Series x = Series::variable({var}, trunc, var);
    return (one - x * x).reciprocal();
}

// p(x) as a series from monomial coefficients
inline Series poly(const std::string& var, int trunc, std::initializer_list<std::pair<int, Complex>> terms) {
    Series s({var}, trunc);
    for (const auto& [e, c] : terms) s = s + Series::monomial({var}, trunc, {e}, c);
    return s;
}

// Rebuild with zero lower bounds, verifying the terms are actually regular.
// Products involving Laurent factors keep a pessimistic declared bound even
// when every surviving term has non-negative exponents.
inline Series tighten(const Series& s) {
    Series r(s.vars(), s.trunc());
    for (const auto& [e, c] : s.terms()) r = r + Series::monomial(s.vars(), s.trunc(), e, c);
    return r;
}

} // namespace detail

// Residue table rows (beta_E, beta_P, beta_dz) by columns (n_E, n_P).
inline std::array<std::array<Complex, 2>, 3> residue_table(const EllipticFamilyGerm& g) {
    return {{{model::residue_value(g.beta_E_at_nE), model::residue_value(g.beta_E_at_nP)},
             {model::residue_value(g.beta_P_at_nE), model::residue_value(g.beta_P_at_nP)},
             {model::residue_value(g.beta_dz_at_nE), model::residue_value(g.beta_dz_at_nP)}}};
}

inline EllipticFamilyGerm build_family_germ(Complex tau, int trunc = 8) {
    if (tau.imag() <= 0.0) throw domain_error("lattice modulus must have positive imaginary part");
    if (trunc < 4) throw domain_error("germ truncation must be at least 4");
    int wp_trunc = trunc % 2 == 0 ? trunc : trunc + 1;
    WeierstrassData wp = weierstrass_series(tau, std::max(4, wp_trunc));
    const Complex scale = Complex(-1.0 / (4.0 * kPi), 0.0);
    const Complex zero(0.0, 0.0);

    // beta_E at n_E. On E: P = wp(u) du^2 = u^2 wp(u) (du/u)^2, and u^2 wp(u)
    // = 1 + c_2 u^4 + ... . On the sphere: omega_{0,-1} omega_{0,1} =
    // -dw^2/(w^2(w^2-1)) = (1/(1-w^2)) (dw/w)^2.
    Series u2 = Series::monomial({"z"}, wp.laurent.trunc() + 4, {2}, Complex(1.0, 0.0));
    Series e_side = detail::tighten((wp.laurent * u2).truncated(trunc)).renamed({"x"});
    Series p_side = detail::geometric_even("x", trunc);
    Series bE_nE = detail::join_branches(e_side, p_side, "uE", "vE").scaled(scale);

    // beta_E at n_P: u = w+1, v = w-1 give -u/((u-1)^2(u-2)) and
    // -v/((v+1)^2(v+2)) as the branch coefficients of (du/u)^2, (dv/v)^2.
    Series num = detail::poly("x", trunc, {{1, Complex(-1.0, 0.0)}});
    Series den = detail::poly("x", trunc, {{0, Complex(-2.0, 0.0)},
                                           {1, Complex(5.0, 0.0)},
                                           {2, Complex(-4.0, 0.0)},
                                           {3, Complex(1.0, 0.0)}}); // (x-1)^2 (x-2)
    Series bE_nP_u = num * den.reciprocal();
    Series den2 = detail::poly("x", trunc, {{0, Complex(2.0, 0.0)},
                                            {1, Complex(5.0, 0.0)},
                                            {2, Complex(4.0, 0.0)},
                                            {3, Complex(1.0, 0.0)}}); // (x+1)^2 (x+2)
    Series bE_nP_v = num * den2.reciprocal();
    Series bE_nP = detail::join_branches(bE_nP_u, bE_nP_v, "uP", "vP").scaled(scale);

    // beta_P = (-1/4pi) omega_{-1,1}^2 with omega_{-1,1}^2 = 4 dw^2/(w^2-1)^2.
    // At n_E only the sphere branch is nonzero: 4 w^2/(w^2-1)^2 (dw/w)^2.
    Series bP_nE_v({"x"}, trunc);
    {
        Series g = detail::geometric_even("x", trunc); // 1/(1-x^2)
        Series w2 = detail::poly("x", trunc, {{2, Complex(4.0, 0.0)}});
        bP_nE_v = w2 * g * g;
    }
    Series bP_nE = detail::join_branches(Series({"x"}, trunc), bP_nE_v, "uE", "vE").scaled(scale);

    // At n_P: 4/(u-2)^2 and 4/(v+2)^2.
    Series four = detail::poly("x", trunc, {{0, Complex(4.0, 0.0)}});
    Series denu = detail::poly("x", trunc, {{0, Complex(4.0, 0.0)}, {1, Complex(-4.0, 0.0)}, {2, Complex(1.0, 0.0)}});
    Series denv = detail::poly("x", trunc, {{0, Complex(4.0, 0.0)}, {1, Complex(4.0, 0.0)}, {2, Complex(1.0, 0.0)}});
    Series bP_nP_u = four * denu.reciprocal();
    Series bP_nP_v = four * denv.reciprocal();
    Series bP_nP = detail::join_branches(bP_nP_u, bP_nP_v, "uP", "vP").scaled(scale);

    // beta_dz = -2i dz^2: on E it is -2i u^2 (du/u)^2, zero on the sphere and
    // zero at the self-node entirely.
    Series bdz_nE = detail::join_branches(detail::poly("x", trunc, {{2, Complex(0.0, -2.0)}}), Series({"x"}, trunc),
                                          "uE", "vE");
    Series bdz_nP = detail::join_branches(Series({"x"}, trunc), Series({"x"}, trunc), "uP", "vP");

    EllipticFamilyGerm germ{tau,
                            trunc,
                            std::move(wp),
                            SectionK(2, std::move(bE_nE)),
                            SectionK(2, std::move(bE_nP)),
                            SectionK(2, std::move(bP_nE)),
                            SectionK(2, std::move(bP_nP)),
                            SectionK(2, std::move(bdz_nE)),
                            SectionK(2, std::move(bdz_nP))};

    // construction self-test: the residue table is fixed by the example
    auto table = residue_table(germ);
    const Complex r = scale;
    const std::array<std::array<Complex, 2>, 3> expected = {{{r, zero}, {zero, r}, {zero, zero}}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 2; ++j)
            if (std::abs(table[i][j] - expected[i][j]) > 1e-12)
                throw domain_error("germ construction failed its residue self-test at entry (" + std::to_string(i) +
                                   "," + std::to_string(j) + ")");
    // Laurent targets at t = 0: Laur(beta_E)|_{n_E} = Laur(beta_P)|_{n_P} = -1/pi
    Complex le = model::laur(germ.beta_E_at_nE).constant_term();
    Complex lp = model::laur(germ.beta_P_at_nP).constant_term();
    if (std::abs(le - Complex(-1.0 / kPi, 0.0)) > 1e-12 || std::abs(lp - Complex(-1.0 / kPi, 0.0)) > 1e-12)
        throw domain_error("germ construction failed its Laurent-target self-test");
    return germ;
}

enum class Involution { elliptic, sphere }; // iota_E, iota_P

// Parameter action shared by both involutions: (t_E, t_P, tau) -> (-t_E, t_P, tau).
struct InvolutionReport {
    EllipticFamilyGerm transformed;
    std::array<Complex, 3> parameter_signs;        // on (t_E, t_P, tau)
    std::array<Complex, 3> cotangent_column_signs; // on (t_E beta_E, t_P beta_P, beta_dz)
    double invariance_residual;                    // max germ deviation from the original
};

// Max coefficient deviation between the germs of two families.
inline double germ_distance(const EllipticFamilyGerm& a, const EllipticFamilyGerm& b) {
    auto diff = [](const SectionK& x, const SectionK& y) {
        Series d = x.coeff - y.coeff;
        double m = 0.0;
        for (const auto& [e, c] : d.terms()) m = std::max(m, std::abs(c));
        return m;
    };
    double r = 0.0;
    r = std::max(r, diff(a.beta_E_at_nE, b.beta_E_at_nE));
    r = std::max(r, diff(a.beta_E_at_nP, b.beta_E_at_nP));
    r = std::max(r, diff(a.beta_P_at_nE, b.beta_P_at_nE));
    r = std::max(r, diff(a.beta_P_at_nP, b.beta_P_at_nP));
    r = std::max(r, diff(a.beta_dz_at_nE, b.beta_dz_at_nE));
    r = std::max(r, diff(a.beta_dz_at_nP, b.beta_dz_at_nP));
    return r;
}

namespace detail {

inline Series substitute_signs(const Series& f, Complex su, Complex sv) {
    const std::string& u = f.vars()[0];
    const std::string& v = f.vars()[1];
    std::map<std::string, Series> assign;
    assign.emplace(u, Series::variable(f.vars(), f.trunc(), u).scaled(su));
    assign.emplace(v, Series::variable(f.vars(), f.trunc(), v).scaled(sv));
    return f.compose(assign);
}

// iota_P swaps the self-node branches: (u_P, v_P) -> (-v_P, -u_P)
inline Series substitute_swap_neg(const Series& f) {
    const std::string& u = f.vars()[0];
    const std::string& v = f.vars()[1];
    std::map<std::string, Series> assign;
    assign.emplace(u, Series::variable(f.vars(), f.trunc(), v).scaled(Complex(-1.0, 0.0)));
    assign.emplace(v, Series::variable(f.vars(), f.trunc(), u).scaled(Complex(-1.0, 0.0)));
    return f.compose(assign);
}

} // namespace detail

inline InvolutionReport involution_action(const EllipticFamilyGerm& g, Involution which) {
    const Complex minus(-1.0, 0.0), plus(1.0, 0.0);
    EllipticFamilyGerm t = g;
    if (which == Involution::elliptic) {
        // u_E -> -u_E, everything else fixed
        t.beta_E_at_nE = SectionK(2, detail::substitute_signs(g.beta_E_at_nE.coeff, minus, plus));
        t.beta_P_at_nE = SectionK(2, detail::substitute_signs(g.beta_P_at_nE.coeff, minus, plus));
        t.beta_dz_at_nE = SectionK(2, detail::substitute_signs(g.beta_dz_at_nE.coeff, minus, plus));
    } else {
        // v_E -> -v_E at the elliptic node, branch swap at the self-node
        t.beta_E_at_nE = SectionK(2, detail::substitute_signs(g.beta_E_at_nE.coeff, plus, minus));
        t.beta_P_at_nE = SectionK(2, detail::substitute_signs(g.beta_P_at_nE.coeff, plus, minus));
        t.beta_dz_at_nE = SectionK(2, detail::substitute_signs(g.beta_dz_at_nE.coeff, plus, minus));
        t.beta_E_at_nP = SectionK(2, detail::substitute_swap_neg(g.beta_E_at_nP.coeff));
        t.beta_P_at_nP = SectionK(2, detail::substitute_swap_neg(g.beta_P_at_nP.coeff));
        t.beta_dz_at_nP = SectionK(2, detail::substitute_swap_neg(g.beta_dz_at_nP.coeff));
    }
    double residual = germ_distance(g, t);
    // germ invariance means the cotangent columns transform by the parameter
    // signs alone: t_E beta_E picks up the t_E sign, the others stay fixed
    return InvolutionReport{std::move(t), {minus, plus, plus}, {minus, plus, plus}, residual};
}

// Rows (d/dt_E, d/dt_P, d/dtau) against columns (t_E beta_E, t_P beta_P,
// beta_dz). The t-rows are computed through the vanishing-residue pairing
// limit; the (tau, beta_dz) entry is quoted, not computed, and flagged.
struct CotangentTable {
    std::array<std::array<Complex, 3>, 3> value;
    std::array<std::array<bool, 3>, 3> asserted; // true = quoted entry
};

inline CotangentTable cotangent_frame_table(const EllipticFamilyGerm& g) {
    CotangentTable t{};
    auto times_chart_param = [](const SectionK& s) {
        const Series& c = s.coeff;
        Series zw = Series::variable(c.vars(), c.trunc(), c.vars()[0]) *
                    Series::variable(c.vars(), c.trunc(), c.vars()[1]);
        return SectionK(s.k, c * zw);
    };
    // row 0: d/dt_E acts at n_E; row 1: d/dt_P acts at n_P
    const SectionK* cols_nE[3] = {&g.beta_E_at_nE, &g.beta_P_at_nE, &g.beta_dz_at_nE};
    const SectionK* cols_nP[3] = {&g.beta_E_at_nP, &g.beta_P_at_nP, &g.beta_dz_at_nP};
    for (int j = 0; j < 3; ++j) {
        // column 0 carries the factor t_E (= u v at n_E, scalar at n_P);
        // column 1 carries t_P (scalar at n_E, u v at n_P)
        SectionK at_nE = (j == 0) ? times_chart_param(*cols_nE[j]) : *cols_nE[j];
        SectionK at_nP = (j == 1) ? times_chart_param(*cols_nP[j]) : *cols_nP[j];
        Complex e0 = pairing::plumbing_pairing_limit_value(at_nE);
        Complex e1 = pairing::plumbing_pairing_limit_value(at_nP);
        // a cross column scaled by the other node's parameter only has a
        // well-defined limit because the germ limit itself vanishes
        if (j == 1 && std::abs(e0) > 1e-12)
            throw domain_error("cross-term pairing limit did not vanish at the elliptic node");
        if (j == 0 && std::abs(e1) > 1e-12)
            throw domain_error("cross-term pairing limit did not vanish at the self-node");
        t.value[0][j] = e0;
        t.value[1][j] = e1;
        t.asserted[0][j] = false;
        t.asserted[1][j] = false;
    }
    // row 2: the tau-direction pairs to zero against the t-columns because
    // their Laurent series are divisible by the node parameter; the last
    // entry is the quoted normalization of the modulus differential.
    Series l0 = model::laur(times_chart_param(g.beta_E_at_nE));
    Series l1 = model::laur(times_chart_param(g.beta_P_at_nP));
    if (std::abs(l0.constant_term()) > 1e-12 || std::abs(l1.constant_term()) > 1e-12)
        throw domain_error("t-column Laurent series is not divisible by the node parameter");
    t.value[2][0] = Complex(0.0, 0.0);
    t.value[2][1] = Complex(0.0, 0.0);
    t.value[2][2] = Complex(1.0, 0.0);
    t.asserted[2][0] = false;
    t.asserted[2][1] = false;
    t.asserted[2][2] = true;
    return t;
}

} // namespace plumb::elliptic
