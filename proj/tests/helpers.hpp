#pragma once

#include <random>
#include <string>
#include <vector>

#include "plumb/series.hpp"

namespace plumb::testing {

// Integer coefficients keep double arithmetic exact under reordering, so
// equality assertions on randomized algebra laws can be literal.
inline Complex random_int_coeff(std::mt19937& rng, int lo = -9, int hi = 9) {
    std::uniform_int_distribution<int> d(lo, hi);
    return Complex(static_cast<double>(d(rng)), static_cast<double>(d(rng)));
}

inline Complex random_real_coeff(std::mt19937& rng, double lo = -1.0, double hi = 1.0) {
    std::uniform_real_distribution<double> d(lo, hi);
    return Complex(d(rng), d(rng));
}

struct RandomSeriesOptions {
    bool integer = true;
    bool nonzero_constant = false; // force a unit constant term
    bool zero_constant = false;    // force vanishing constant term
    bool nonzero_linear = false;   // force every variable's linear term nonzero
    double density = 0.5;
    int int_lo = -9; // keep small when compositions stack products
    int int_hi = 9;
};

inline Series random_series(std::mt19937& rng, const std::vector<std::string>& vars, int trunc,
                            const RandomSeriesOptions& opt = {}) {
    Series s(vars, trunc);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::vector<int> e(vars.size(), 0);
    // iterate all exponent tuples of total degree <= trunc
    auto step = [&](auto&& self, std::size_t i, int budget) -> void {
        if (i == vars.size()) {
            int deg = Series::total_degree(e);
            bool is_const = deg == 0;
            if (is_const && opt.zero_constant) return;
            if (coin(rng) > opt.density && !(is_const && opt.nonzero_constant)) return;
            Complex c = opt.integer ? random_int_coeff(rng, opt.int_lo, opt.int_hi) : random_real_coeff(rng);
            if (is_const && opt.nonzero_constant && std::abs(c) < 0.5) c = Complex(1.0, 0.0);
            if (std::abs(c) > Series::kStructuralZero) s = s + Series::monomial(vars, trunc, e, c);
            return;
        }
        for (int x = 0; x <= budget; ++x) {
            e[i] = x;
            self(self, i + 1, budget - x);
        }
        e[i] = 0;
    };
    step(step, 0, trunc);
    if (opt.nonzero_linear) {
        for (std::size_t i = 0; i < vars.size(); ++i) {
            std::vector<int> lin(vars.size(), 0);
            lin[i] = 1;
            if (std::abs(s.coefficient(lin)) <= Series::kStructuralZero)
                s = s + Series::monomial(vars, trunc, lin, Complex(1.0, 0.0));
        }
    }
    return s;
}

} // namespace plumb::testing
