#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "plumb/errors.hpp"
#include "plumb/model.hpp"
#include "plumb/series.hpp"

// Dimension counting for regular quadratic differentials on noded surfaces,
// frame normalization, second-frame construction, t-divisibility and the
// extension solve, all over the truncated series ring.
namespace plumb::frames {

using model::SectionK;

struct NodalConfiguration {
    struct Part {
        int genus;
        int punctures;
    };
    std::vector<Part> parts;
    int node_count;

    NodalConfiguration(std::vector<Part> parts_, int nodes) : parts(std::move(parts_)), node_count(nodes) {
        if (node_count < 0) throw domain_error("node count must be non-negative");
        for (std::size_t i = 0; i < parts.size(); ++i) {
            const Part& p = parts[i];
            if (p.genus < 0 || p.punctures < 0)
                throw domain_error("part " + std::to_string(i) + " has negative genus or puncture count");
            if (2 * p.genus - 2 + p.punctures <= 0)
                throw domain_error("part " + std::to_string(i) + " (g=" + std::to_string(p.genus) +
                                   ", n=" + std::to_string(p.punctures) + ") is unstable");
        }
    }

    int total_punctures() const {
        int n = 0;
        for (const Part& p : parts) n += p.punctures;
        return n;
    }

    // every puncture is paired into a node
    bool is_closed() const { return total_punctures() == 2 * node_count; }

    int total_euler_characteristic() const {
        int chi = 0;
        for (const Part& p : parts) chi += 2 - 2 * p.genus - p.punctures;
        return chi;
    }

    // arithmetic genus of the closed nodal surface (connected dual graph)
    int arithmetic_genus() const {
        int g = 1 - static_cast<int>(parts.size()) + node_count;
        for (const Part& p : parts) g += p.genus;
        return g;
    }
};

// Sum over parts of (3g - 3 + 2n), minus one per node for the residue
// matching conditions. For closed configurations this equals -(3/2) times the
// total Euler characteristic.
inline int dimension_count(const NodalConfiguration& config) {
    int d = 0;
    for (const auto& p : config.parts) d += 3 * p.genus - 3 + 2 * p.punctures;
    return d - config.node_count;
}

// All closed stable configurations with connected dual graph and arithmetic
// genus <= max_genus, parts listed in nondecreasing (g, n) order. A connected
// multigraph with the given puncture degrees exists iff m >= parts-1 and each
// part keeps at least one puncture when there are several parts.
inline std::vector<NodalConfiguration> enumerate_closed_stable(int max_genus) {
    std::vector<NodalConfiguration> out;
    for (int m = 0; m <= 3 * (max_genus - 1) + 1 && m <= 64; ++m) {
        int total_n = 2 * m;
        int max_parts = m + 1;
        std::vector<NodalConfiguration::Part> stack;
        // enumerate nondecreasing part lists recursively
        auto rec = [&](auto&& self, int remaining_n, int min_g, int min_n_at_g) -> void {
            if (!stack.empty()) {
                if (remaining_n == 0) {
                    int p = static_cast<int>(stack.size());
                    if (m >= p - 1) {
                        bool each_ok = p == 1 || std::all_of(stack.begin(), stack.end(),
                                                             [](const auto& q) { return q.punctures >= 1; });
                        if (each_ok) {
                            NodalConfiguration cfg(stack, m);
                            if (cfg.arithmetic_genus() >= 0 && cfg.arithmetic_genus() <= max_genus)
                                out.push_back(cfg);
                        }
                    }
                }
                if (static_cast<int>(stack.size()) >= max_parts) return;
            }
            for (int g = min_g; g <= max_genus; ++g) {
                // genus beyond the budget cannot recover
                int gsum = g;
                for (const auto& q : stack) gsum += q.genus;
                if (gsum > max_genus) break;
                int n_start = g == min_g ? min_n_at_g : 0;
                for (int n = n_start; n <= remaining_n; ++n) {
                    if (2 * g - 2 + n <= 0) continue;
                    stack.push_back({g, n});
                    self(self, remaining_n - n, g, n);
                    stack.pop_back();
                }
            }
        };
        rec(rec, total_n, 0, 0);
    }
    return out;
}

// ---- series matrices ----

using SeriesMatrix = std::vector<std::vector<Series>>;

inline void check_square(const SeriesMatrix& m, const char* what) {
    for (const auto& row : m)
        if (row.size() != m.size()) throw domain_error(std::string(what) + " must be a square matrix");
}

inline SeriesMatrix mat_mul(const SeriesMatrix& a, const SeriesMatrix& b) {
    std::size_t n = a.size();
    if (b.size() != n) throw domain_error("matrix dimension mismatch in product");
    SeriesMatrix r(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Series acc = a[i][0] * b[0][j];
            for (std::size_t k = 1; k < n; ++k) acc = acc + a[i][k] * b[k][j];
            r[i].push_back(std::move(acc));
        }
    return r;
}

// Dense LU inverse with partial pivoting for the constant term.
inline std::vector<std::vector<Complex>> constant_inverse(std::vector<std::vector<Complex>> a, double* cond = nullptr) {
    std::size_t n = a.size();
    double norm_a = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        double col = 0.0;
        for (std::size_t i = 0; i < n; ++i) col += std::abs(a[i][j]);
        norm_a = std::max(norm_a, col);
    }
    std::vector<std::vector<Complex>> inv(n, std::vector<Complex>(n, Complex(0.0, 0.0)));
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = Complex(1.0, 0.0);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t i = col + 1; i < n; ++i)
            if (std::abs(a[i][col]) > std::abs(a[piv][col])) piv = i;
        if (std::abs(a[piv][col]) <= 1e-14)
            throw domain_error("singular constant term in series matrix (pivot " + std::to_string(col) + ")");
        std::swap(a[piv], a[col]);
        std::swap(inv[piv], inv[col]);
        Complex d = a[col][col];
        for (std::size_t j = 0; j < n; ++j) {
            a[col][j] /= d;
            inv[col][j] /= d;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col) continue;
            Complex f = a[i][col];
            if (std::abs(f) == 0.0) continue;
            for (std::size_t j = 0; j < n; ++j) {
                a[i][j] -= f * a[col][j];
                inv[i][j] -= f * inv[col][j];
            }
        }
    }
    if (cond) {
        double norm_inv = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            double colsum = 0.0;
            for (std::size_t i = 0; i < n; ++i) colsum += std::abs(inv[i][j]);
            norm_inv = std::max(norm_inv, colsum);
        }
        *cond = norm_a * norm_inv;
    }
    return inv;
}

// Inverse over the truncated series ring: invert the constant term by LU,
// then a Neumann series in the remainder, which is nilpotent modulo the
// truncation. Terminates in at most trunc steps.
inline SeriesMatrix mat_inverse(const SeriesMatrix& m, double* cond = nullptr) {
    check_square(m, "series matrix");
    std::size_t n = m.size();
    if (n == 0) return {};
    const Series& proto = m[0][0];
    int T = proto.trunc();
    std::vector<std::vector<Complex>> m0(n, std::vector<Complex>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (m[i][j].vars() != proto.vars())
                throw domain_error("series matrix entries must share one variable set");
            m0[i][j] = m[i][j].constant_term();
        }
    std::vector<std::vector<Complex>> inv0 = constant_inverse(m0, cond);
    auto const_series = [&](Complex c) { return Series::constant(proto.vars(), T, c, proto.lower()); };
    SeriesMatrix m0inv(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m0inv[i].push_back(const_series(inv0[i][j]));
    // R = M0^-1 * M - I vanishes at the origin
    SeriesMatrix r = mat_mul(m0inv, m);
    for (std::size_t i = 0; i < n; ++i) r[i][i] = r[i][i] - const_series(Complex(1.0, 0.0));
    // (I + R)^-1 by Horner: acc = I - R*acc, trunc times
    SeriesMatrix acc(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) acc[i].push_back(const_series(i == j ? 1.0 : 0.0));
    for (int step = 0; step < T; ++step) {
        SeriesMatrix ra = mat_mul(r, acc);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                acc[i][j] = (i == j ? const_series(Complex(1.0, 0.0)) - ra[i][j] : -ra[i][j]).truncated(T);
    }
    return mat_mul(acc, m0inv);
}

// ---- frames ----

// Node-chart germs of an indexed family of weight-2 sections together with
// the evaluation matrix (rows = functionals, columns = sections) over the
// base-parameter series ring.
struct FrameSet {
    std::vector<SectionK> sections;
    SeriesMatrix eval;

    FrameSet(std::vector<SectionK> sections_, SeriesMatrix eval_)
        : sections(std::move(sections_)), eval(std::move(eval_)) {
        if (eval.size() != sections.size())
            throw domain_error("evaluation matrix size " + std::to_string(eval.size()) +
                               " does not match section count " + std::to_string(sections.size()));
        check_square(eval, "evaluation matrix");
    }
};

// Scalar-multiply a section coefficient by a base-parameter series, lifting
// the scalar into the section's variable space by name.
inline Series scale_by_base(const Series& section_coeff, const Series& scalar) {
    return section_coeff * scalar.embed(section_coeff.vars());
}

// Apply the inverse evaluation matrix so the functionals become dual to the
// sections: new section j is sum_k (M^-1)_{kj} old_k, and the updated
// evaluation matrix M * M^-1 is the identity through the truncation.
inline FrameSet frame_normalize(const FrameSet& raw, double* cond = nullptr) {
    std::size_t n = raw.sections.size();
    if (n == 0) return raw;
    SeriesMatrix minv = mat_inverse(raw.eval, cond);
    std::vector<SectionK> sections;
    for (std::size_t j = 0; j < n; ++j) {
        Series acc = scale_by_base(raw.sections[0].coeff, minv[0][j]);
        for (std::size_t k = 1; k < n; ++k) acc = acc + scale_by_base(raw.sections[k].coeff, minv[k][j]);
        sections.emplace_back(raw.sections[j].k, std::move(acc));
    }
    return FrameSet(std::move(sections), mat_mul(raw.eval, minv));
}

// Multiply the indexed sections by their plumbing parameter, which in the
// node chart is the product of the two chart variables.
inline FrameSet second_frame(const FrameSet& first, const std::vector<std::size_t>& t_indices) {
    std::vector<SectionK> sections = first.sections;
    for (std::size_t idx : t_indices) {
        if (idx >= sections.size())
            throw domain_error("t-index " + std::to_string(idx) + " out of range for " +
                               std::to_string(sections.size()) + " sections");
        const Series& c = sections[idx].coeff;
        Series zw = Series::variable(c.vars(), c.trunc(), c.vars()[0], c.lower()) *
                    Series::variable(c.vars(), c.trunc(), c.vars()[1], c.lower());
        sections[idx] = SectionK(sections[idx].k, c * zw);
    }
    return FrameSet(std::move(sections), first.eval);
}

// Exact division by the named parameter; rejects non-divisible input naming
// the offending monomials.
inline Series t_divisibility(const Series& coeff, const std::string& t_var) {
    return coeff.divided_by_var(t_var);
}

inline std::vector<Series> t_divisibility(const std::vector<Series>& coeffs, const std::string& t_var) {
    std::vector<Series> out;
    out.reserve(coeffs.size());
    for (const auto& c : coeffs) out.push_back(c.divided_by_var(t_var));
    return out;
}

// Left action of a base-change jacobian: section i becomes sum_j J_ij
// section_j, and the evaluation matrix picks up J^T on the right, so
// transforming by J1 then J2 equals transforming by J2*J1.
inline FrameSet frame_transform(const FrameSet& frame, const SeriesMatrix& jacobian) {
    std::size_t n = frame.sections.size();
    check_square(jacobian, "jacobian");
    if (jacobian.size() != n) throw domain_error("jacobian dimension does not match frame size");
    // invertibility at the origin
    std::vector<std::vector<Complex>> j0(n, std::vector<Complex>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) j0[i][j] = jacobian[i][j].constant_term();
    constant_inverse(j0);
    std::vector<SectionK> sections;
    for (std::size_t i = 0; i < n; ++i) {
        Series acc = scale_by_base(frame.sections[0].coeff, jacobian[i][0]);
        for (std::size_t j = 1; j < n; ++j) acc = acc + scale_by_base(frame.sections[j].coeff, jacobian[i][j]);
        sections.emplace_back(frame.sections[i].k, std::move(acc));
    }
    SeriesMatrix jt(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) jt[i].push_back(jacobian[j][i]);
    return FrameSet(std::move(sections), mat_mul(frame.eval, jt));
}

// Solve laur_matrix * b = laur_targets over the truncated series ring. The
// extension operator reduces to this solve; the caller supplies the negated
// Laur values of the section being extended as targets.
inline std::vector<Series> solve_extension(const std::vector<Series>& laur_targets, const SeriesMatrix& laur_matrix) {
    check_square(laur_matrix, "Laur matrix");
    if (laur_targets.size() != laur_matrix.size())
        throw domain_error("target vector length does not match Laur matrix size");
    if (laur_targets.empty()) return {};
    SeriesMatrix inv = mat_inverse(laur_matrix);
    std::vector<Series> b;
    for (std::size_t i = 0; i < inv.size(); ++i) {
        Series acc = inv[i][0] * laur_targets[0];
        for (std::size_t j = 1; j < inv.size(); ++j) acc = acc + inv[i][j] * laur_targets[j];
        b.push_back(std::move(acc));
    }
    return b;
}

} // namespace plumb::frames
