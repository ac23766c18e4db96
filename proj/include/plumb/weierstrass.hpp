#pragma once

#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <vector>

#include "plumb/errors.hpp"
#include "plumb/series.hpp"

// The Weierstrass elliptic function for the lattice Z + tau*Z, computed two
// independent ways: Eisenstein q-series for the invariants plus the classical
// Laurent-coefficient recursion, and a direct lattice sum with exact row
// summation. The two routes share no code and cross-check each other.
namespace plumb::elliptic {

inline constexpr double kPi = std::numbers::pi;

struct WeierstrassData {
    Complex tau;
    Complex g2;
    Complex g3;
    Series laurent; // in z, Laurent mode down to z^-2
};

// sigma_k(n), the divisor power sum
inline double sigma_power(int n, int k) {
    double s = 0.0;
    for (int d = 1; d <= n; ++d)
        if (n % d == 0) s += std::pow(static_cast<double>(d), k);
    return s;
}

// g2, g3 through the normalized Eisenstein series E4, E6 in q = e^{2 pi i tau},
// summed until the series increments themselves drop below 1e-18.
inline void invariants_from_q_series(Complex tau, Complex& g2, Complex& g3) {
    if (tau.imag() <= 0.0) throw domain_error("lattice modulus must have positive imaginary part");
    Complex q = std::exp(Complex(0.0, 2.0 * kPi) * tau);
    Complex e4(1.0, 0.0), e6(1.0, 0.0), qn(1.0, 0.0);
    for (int n = 1; n < 4000; ++n) {
        qn *= q;
        Complex t4 = 240.0 * sigma_power(n, 3) * qn;
        Complex t6 = 504.0 * sigma_power(n, 5) * qn;
        e4 += t4;
        e6 -= t6;
        if (std::abs(t4) + std::abs(t6) < 1e-18) break;
    }
    double pi4 = kPi * kPi * kPi * kPi;
    g2 = (4.0 * pi4 / 3.0) * e4;
    g3 = (8.0 * pi4 * kPi * kPi / 27.0) * e6;
}

// Laurent expansion 1/z^2 + sum_{k>=2} c_k z^{2k-2} with c_2 = g2/20,
// c_3 = g3/28 and the classical quadratic recursion for the rest.
inline WeierstrassData weierstrass_series(Complex tau, int trunc) {
    if (tau.imag() <= 0.0) throw domain_error("lattice modulus must have positive imaginary part");
    if (trunc < 2 || trunc % 2 != 0)
        throw domain_error("Weierstrass truncation must be a positive even integer, got " + std::to_string(trunc));
    Complex g2, g3;
    invariants_from_q_series(tau, g2, g3);
    int kmax = (trunc + 2) / 2; // z^{2k-2} up to trunc
    std::map<int, Complex> c;
    if (kmax >= 2) c[2] = g2 / 20.0;
    if (kmax >= 3) c[3] = g3 / 28.0;
    for (int k = 4; k <= kmax; ++k) {
        Complex s(0.0, 0.0);
        for (int m = 2; m <= k - 2; ++m) s += c[m] * c[k - m];
        c[k] = 3.0 * s / ((2.0 * k + 1.0) * (k - 3.0));
    }
    Series laurent = Series::monomial({"z"}, trunc, {-2}, Complex(1.0, 0.0), {-2});
    for (int k = 2; k <= kmax; ++k)
        laurent = laurent + Series::monomial({"z"}, trunc, {2 * k - 2}, c[k], {-2});
    return WeierstrassData{tau, g2, g3, std::move(laurent)};
}

inline Complex wp_eval(const WeierstrassData& w, Complex z) {
    if (std::abs(z) == 0.0) throw domain_error("Weierstrass function has a pole at the origin");
    return w.laurent.eval({{"z", z}});
}

// Direct lattice sum in Eisenstein order: rows m + n*tau summed exactly over
// m with the cosecant identity, rows paired in n. Terms decay like
// e^{-2 pi n Im(tau)}, so the row count needed is small.
inline Complex wp_lattice_rowsum(Complex z, Complex tau, int max_rows = 64, double tol = 1e-18) {
    if (tau.imag() <= 0.0) throw domain_error("lattice modulus must have positive imaginary part");
    auto csc2 = [](Complex x) {
        Complex s = std::sin(kPi * x);
        return 1.0 / (s * s);
    };
    Complex pi2(kPi * kPi, 0.0);
    Complex val = pi2 * csc2(z) - pi2 / 3.0;
    for (int n = 1; n <= max_rows; ++n) {
        Complex nt = static_cast<double>(n) * tau;
        Complex term = pi2 * (csc2(z - nt) + csc2(z + nt) - 2.0 * csc2(nt));
        val += term;
        if (std::abs(term) < tol) break;
    }
    return val;
}

// Plain truncated double sum over |m|, |n| <= box, summing symmetric lattice
// pairs together. Converges only like box^-2; kept as a slow sanity check.
inline Complex wp_lattice_box(Complex z, Complex tau, int box) {
    Complex val = 1.0 / (z * z);
    for (int n = 0; n <= box; ++n)
        for (int m = (n == 0 ? 1 : -box); m <= box; ++m) {
            Complex w = static_cast<double>(m) + static_cast<double>(n) * tau;
            Complex a = 1.0 / ((z - w) * (z - w)) - 1.0 / (w * w);
            Complex b = 1.0 / ((z + w) * (z + w)) - 1.0 / (w * w);
            val += a + b;
        }
    return val;
}

} // namespace plumb::elliptic
