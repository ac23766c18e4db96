#pragma once

#include <algorithm>
#include <complex>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "plumb/errors.hpp"

namespace plumb {

using Complex = std::complex<double>;

// Sparse truncated multivariate power/Laurent series over complex doubles.
//
// Truncation is by total degree and is tracked explicitly: `trunc` is the
// largest total degree this value is certified at; terms beyond it are
// unknown, not zero. Negative exponents are permitted per variable only when
// that variable's lower bound is set below zero at construction.
//
// Values are immutable after construction; all operations are pure.
class Series {
public:
    using Exponents = std::vector<int>;
    using TermMap = std::map<Exponents, Complex>; // lexicographic key order

    // Coefficients with magnitude at or below this are not stored.
    static constexpr double kStructuralZero = 1e-300;

    Series(std::vector<std::string> vars, int trunc)
        : Series(std::move(vars), trunc, {}) {}

    Series(std::vector<std::string> vars, int trunc, std::vector<int> lower)
        : vars_(std::move(vars)), trunc_(trunc), lower_(std::move(lower)) {
        if (trunc_ < 0) throw domain_error("series truncation must be non-negative, got " + std::to_string(trunc_));
        if (lower_.empty()) lower_.assign(vars_.size(), 0);
        if (lower_.size() != vars_.size())
            throw domain_error("lower-bound list length " + std::to_string(lower_.size()) +
                               " does not match variable count " + std::to_string(vars_.size()));
        for (int b : lower_)
            if (b > 0) throw domain_error("per-variable lower bound must be <= 0");
    }

    static Series zero(std::vector<std::string> vars, int trunc, std::vector<int> lower = {}) {
        return Series(std::move(vars), trunc, std::move(lower));
    }

    static Series constant(std::vector<std::string> vars, int trunc, Complex c, std::vector<int> lower = {}) {
        Series s(std::move(vars), trunc, std::move(lower));
        s.insert(Exponents(s.vars_.size(), 0), c);
        return s;
    }

    static Series monomial(std::vector<std::string> vars, int trunc, Exponents exp, Complex c,
                           std::vector<int> lower = {}) {
        Series s(std::move(vars), trunc, std::move(lower));
        s.check_exponents(exp);
        s.insert(std::move(exp), c);
        return s;
    }

    static Series variable(std::vector<std::string> vars, int trunc, const std::string& name,
                           std::vector<int> lower = {}) {
        Series s(std::move(vars), trunc, std::move(lower));
        Exponents e(s.vars_.size(), 0);
        e[s.var_index(name)] = 1;
        s.insert(std::move(e), Complex(1.0, 0.0));
        return s;
    }

    const std::vector<std::string>& vars() const { return vars_; }
    int trunc() const { return trunc_; }
    const std::vector<int>& lower() const { return lower_; }
    const TermMap& terms() const { return terms_; }
    std::size_t var_count() const { return vars_.size(); }

    bool is_zero() const { return terms_.empty(); }

    static int total_degree(const Exponents& e) {
        int d = 0;
        for (int x : e) d += x;
        return d;
    }

    // Minimal total degree of a stored term; an empty series is O(trunc+1).
    int valuation() const {
        if (terms_.empty()) return trunc_ + 1;
        int v = total_degree(terms_.begin()->first);
        for (const auto& [e, c] : terms_) v = std::min(v, total_degree(e));
        return v;
    }

    std::size_t var_index(const std::string& name) const {
        for (std::size_t i = 0; i < vars_.size(); ++i)
            if (vars_[i] == name) return i;
        throw domain_error("unknown variable '" + name + "' (vars: " + var_list() + ")");
    }

    bool has_var(const std::string& name) const {
        return std::find(vars_.begin(), vars_.end(), name) != vars_.end();
    }

    // Stored coefficient, or zero for absent terms within the truncation.
    // Queries beyond the truncation are indeterminate and rejected.
    Complex coefficient(const Exponents& exp) const {
        if (exp.size() != vars_.size())
            throw domain_error("exponent tuple length " + std::to_string(exp.size()) +
                               " does not match variable count " + std::to_string(vars_.size()));
        if (total_degree(exp) > trunc_)
            throw domain_error("coefficient query at total degree " + std::to_string(total_degree(exp)) +
                               " exceeds truncation " + std::to_string(trunc_));
        auto it = terms_.find(exp);
        return it == terms_.end() ? Complex(0.0, 0.0) : it->second;
    }

    Complex constant_term() const { return coefficient(Exponents(vars_.size(), 0)); }

    bool operator==(const Series& o) const {
        return vars_ == o.vars_ && trunc_ == o.trunc_ && lower_ == o.lower_ && terms_ == o.terms_;
    }
    bool operator!=(const Series& o) const { return !(*this == o); }

    // ---- ring operations ----

    friend Series operator+(const Series& a, const Series& b) {
        a.check_same_vars(b);
        Series r(a.vars_, std::min(a.trunc_, b.trunc_), merge_lower(a.lower_, b.lower_));
        for (const auto& [e, c] : a.terms_)
            if (total_degree(e) <= r.trunc_) r.insert(e, c);
        for (const auto& [e, c] : b.terms_)
            if (total_degree(e) <= r.trunc_) r.add_to(e, c);
        return r;
    }

    friend Series operator-(const Series& a, const Series& b) { return a + b.scaled(Complex(-1.0, 0.0)); }

    friend Series operator-(const Series& a) { return a.scaled(Complex(-1.0, 0.0)); }

    // Truncated Cauchy product. A factor with valuation v loses no information
    // below the other factor's truncation plus v, so the certified order is
    // min(a.trunc + val(b), b.trunc + val(a)).
    friend Series operator*(const Series& a, const Series& b) {
        a.check_same_vars(b);
        int rtrunc = std::min(a.trunc_ + b.valuation(), b.trunc_ + a.valuation());
        std::vector<int> rlower(a.lower_.size());
        for (std::size_t i = 0; i < rlower.size(); ++i)
            rlower[i] = std::min(0, a.lower_[i] + b.lower_[i]);
        Series r(a.vars_, rtrunc, std::move(rlower));
        for (const auto& [ea, ca] : a.terms_) {
            int da = total_degree(ea);
            for (const auto& [eb, cb] : b.terms_) {
                if (da + total_degree(eb) > rtrunc) continue;
                Exponents e(ea.size());
                for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
                r.add_to(e, ca * cb);
            }
        }
        return r;
    }

    Series scaled(Complex c) const {
        Series r(vars_, trunc_, lower_);
        if (std::abs(c) <= kStructuralZero) return r;
        for (const auto& [e, v] : terms_) r.insert(e, v * c);
        return r;
    }

    // ---- calculus / structural operations ----

    // Formal partial derivative; the certified order drops by one.
    Series partial(const std::string& var) const {
        std::size_t i = var_index(var);
        if (trunc_ == 0) throw domain_error("cannot differentiate a series truncated at order 0");
        std::vector<int> rlower = lower_;
        if (rlower[i] < 0) rlower[i] -= 1;
        Series r(vars_, trunc_ - 1, std::move(rlower));
        for (const auto& [e, c] : terms_) {
            if (e[i] == 0) continue;
            Exponents d = e;
            d[i] -= 1;
            if (total_degree(d) > r.trunc_) continue;
            r.add_to(d, c * static_cast<double>(e[i]));
        }
        return r;
    }

    // Keeps only terms with equal exponents in var_a and var_b, emitting the
    // shared exponent as out_var. The certified order halves because an
    // unknown term of joint degree (trunc+1) can land at out-degree about
    // (trunc+1)/2.
    Series diagonal(const std::string& var_a, const std::string& var_b, const std::string& out_var) const {
        std::size_t ia = var_index(var_a), ib = var_index(var_b);
        if (ia == ib) throw domain_error("diagonal requires two distinct variables");
        for (std::size_t i = 0; i < vars_.size(); ++i)
            if (i != ia && i != ib && vars_[i] == out_var)
                throw domain_error("diagonal output variable '" + out_var + "' collides with remaining variable");
        std::vector<std::string> rvars;
        std::vector<int> rlower;
        rvars.push_back(out_var);
        rlower.push_back(std::min(lower_[ia], lower_[ib]));
        for (std::size_t i = 0; i < vars_.size(); ++i)
            if (i != ia && i != ib) {
                rvars.push_back(vars_[i]);
                rlower.push_back(lower_[i]);
            }
        Series r(std::move(rvars), trunc_ / 2, std::move(rlower));
        for (const auto& [e, c] : terms_) {
            if (e[ia] != e[ib]) continue;
            Exponents out;
            out.reserve(e.size() - 1);
            out.push_back(e[ia]);
            for (std::size_t i = 0; i < e.size(); ++i)
                if (i != ia && i != ib) out.push_back(e[i]);
            if (total_degree(out) > r.trunc_) continue;
            r.add_to(out, c);
        }
        return r;
    }

    // Reciprocal, defined when the minimal-degree term is unique and divides
    // every other term componentwise (so the series is monomial times unit).
    Series reciprocal() const {
        if (terms_.empty()) throw domain_error("reciprocal of the zero series");
        int ldeg = valuation();
        const Exponents* lead = nullptr;
        for (const auto& [e, c] : terms_) {
            if (total_degree(e) != ldeg) continue;
            if (lead) throw domain_error("reciprocal requires a unique minimal-degree term");
            lead = &e;
        }
        const Exponents& e0 = *lead;
        for (const auto& [e, c] : terms_)
            for (std::size_t i = 0; i < e.size(); ++i)
                if (e[i] < e0[i])
                    throw domain_error("reciprocal undefined: leading monomial does not divide all terms");
        Complex c0 = terms_.at(e0);
        int work = trunc_ - 2 * std::max(0, ldeg);
        if (work < 0) throw domain_error("truncation too small for reciprocal of valuation " + std::to_string(ldeg));
        std::vector<int> ulower(lower_.size(), 0);
        Series u(vars_, work, ulower); // (a / leading monomial) - 1, valuation >= 1
        for (const auto& [e, c] : terms_) {
            Exponents d(e.size());
            for (std::size_t i = 0; i < e.size(); ++i) d[i] = e[i] - e0[i];
            if (total_degree(d) > work) continue;
            u.add_to(d, c / c0);
        }
        u.add_to(Exponents(vars_.size(), 0), Complex(-1.0, 0.0));
        // geometric series: 1/(1+u) accumulated by Horner
        Series acc = Series::constant(vars_, work, Complex(1.0, 0.0), ulower);
        for (int i = 0; i < work; ++i)
            acc = Series::constant(vars_, work, Complex(1.0, 0.0), ulower) - (u * acc).truncated(work);
        std::vector<int> rlower(lower_.size());
        for (std::size_t i = 0; i < rlower.size(); ++i) rlower[i] = std::min(0, -e0[i]);
        Exponents minv(e0.size());
        for (std::size_t i = 0; i < minv.size(); ++i) minv[i] = -e0[i];
        Series shift = Series::monomial(vars_, work, std::move(minv), Complex(1.0, 0.0) / c0, rlower);
        return acc * shift;
    }

    // Substitution by Horner accumulation. Every variable of this series must
    // be assigned; all assigned series must share one variable set. A variable
    // occurring with positive powers requires a zero-constant-term assignment;
    // one occurring with negative powers requires an invertible assignment.
    Series compose(const std::map<std::string, Series>& assignments) const {
        if (vars_.empty() || terms_.empty()) {
            if (assignments.empty())
                throw domain_error("compose requires at least one assignment to fix the target variable set");
            const Series& proto = assignments.begin()->second;
            Series r(proto.vars_, proto.trunc_, proto.lower_);
            if (!terms_.empty()) r.insert(Exponents(proto.vars_.size(), 0), terms_.begin()->second);
            return r;
        }
        std::vector<Series> X;
        std::vector<std::optional<Series>> Y(vars_.size());
        const Series* proto = nullptr;
        for (const auto& v : vars_) {
            auto it = assignments.find(v);
            if (it == assignments.end())
                throw domain_error("compose is missing an assignment for variable '" + v + "'");
            if (proto && it->second.vars_ != proto->vars_)
                throw domain_error("assigned series must share one variable set (got " + it->second.var_list() +
                                   " vs " + proto->var_list() + ")");
            if (!proto) proto = &it->second;
            X.push_back(it->second);
        }
        int work = X[0].trunc_;
        std::vector<int> wl = X[0].lower_;
        for (const auto& x : X) {
            work = std::min(work, x.trunc_);
            wl = merge_lower(wl, x.lower_);
        }
        for (std::size_t i = 0; i < vars_.size(); ++i) {
            bool pos = false, neg = false;
            for (const auto& [e, c] : terms_) {
                pos = pos || e[i] > 0;
                neg = neg || e[i] < 0;
            }
            Complex c0 = X[i].terms_.count(Exponents(X[i].var_count(), 0))
                             ? X[i].terms_.at(Exponents(X[i].var_count(), 0))
                             : Complex(0.0, 0.0);
            if (pos && std::abs(c0) > kStructuralZero)
                throw domain_error("substitution with nonzero constant term into positive powers of '" + vars_[i] +
                                   "' violates formal composability");
            if (neg) {
                if (std::abs(c0) <= kStructuralZero)
                    throw domain_error("substitution with zero constant term into negative powers of '" + vars_[i] +
                                       "' has no reciprocal expansion");
                Y[i] = X[i].reciprocal();
                wl = merge_lower(wl, Y[i]->lower_);
            }
        }
        // lift everything into the merged-lower workspace
        for (auto& x : X) x = x.relaxed_lower(wl);
        for (auto& y : Y)
            if (y) *y = y->relaxed_lower(wl);
        std::vector<std::pair<Exponents, Complex>> flat(terms_.begin(), terms_.end());
        Series r = compose_rec(flat, 0, X, Y, work, wl);
        // an unknown outer tail O(trunc+1) maps to degree >= (trunc+1) * min valuation
        int minval = work + 1;
        for (const auto& x : X) minval = std::min(minval, x.valuation());
        if (minval >= 1) r = r.truncated(std::min(work, (trunc_ + 1) * minval - 1));
        return r;
    }

    // Numeric evaluation at a point (sparse term summation in key order).
    Complex eval(const std::map<std::string, Complex>& point) const {
        std::vector<Complex> x(vars_.size());
        for (std::size_t i = 0; i < vars_.size(); ++i) {
            auto it = point.find(vars_[i]);
            if (it == point.end()) throw domain_error("evaluation point missing variable '" + vars_[i] + "'");
            x[i] = it->second;
        }
        Complex acc(0.0, 0.0);
        for (const auto& [e, c] : terms_) {
            Complex m = c;
            for (std::size_t i = 0; i < e.size(); ++i) m *= ipow(x[i], e[i]);
            acc += m;
        }
        return acc;
    }

    // ---- variable-set utilities ----

    // Lift into a superset variable space (matched by name). New variables get
    // lower bound 0; the series does not depend on them, so trunc is kept.
    Series embed(const std::vector<std::string>& new_vars) const {
        std::vector<std::size_t> pos(vars_.size());
        std::vector<int> rlower(new_vars.size(), 0);
        for (std::size_t i = 0; i < vars_.size(); ++i) {
            auto it = std::find(new_vars.begin(), new_vars.end(), vars_[i]);
            if (it == new_vars.end())
                throw domain_error("embed target lacks variable '" + vars_[i] + "'");
            pos[i] = static_cast<std::size_t>(it - new_vars.begin());
            rlower[pos[i]] = lower_[i];
        }
        Series r(new_vars, trunc_, std::move(rlower));
        for (const auto& [e, c] : terms_) {
            Exponents out(new_vars.size(), 0);
            for (std::size_t i = 0; i < e.size(); ++i) out[pos[i]] = e[i];
            r.insert(std::move(out), c);
        }
        return r;
    }

    Series renamed(const std::vector<std::string>& new_vars) const {
        if (new_vars.size() != vars_.size())
            throw domain_error("rename requires the same number of variables");
        Series r(new_vars, trunc_, lower_);
        r.terms_ = terms_;
        return r;
    }

    // Exact division by one power of a variable; rejects non-divisible input.
    Series divided_by_var(const std::string& var) const {
        std::size_t i = var_index(var);
        std::string offenders;
        int count = 0;
        for (const auto& [e, c] : terms_)
            if (e[i] < 1) {
                if (count < 3) offenders += (count ? ", " : "") + exp_string(e);
                ++count;
            }
        if (count)
            throw domain_error("not divisible by '" + var + "': " + std::to_string(count) +
                               " term(s) without it, e.g. " + offenders);
        if (trunc_ == 0) throw domain_error("cannot divide a series truncated at order 0");
        Series r(vars_, trunc_ - 1, lower_);
        for (const auto& [e, c] : terms_) {
            Exponents d = e;
            d[i] -= 1;
            r.insert(std::move(d), c);
        }
        return r;
    }

    // Lower the certified order, discarding terms beyond it.
    Series truncated(int new_trunc) const {
        if (new_trunc >= trunc_) return *this;
        Series r(vars_, new_trunc, lower_);
        for (const auto& [e, c] : terms_)
            if (total_degree(e) <= new_trunc) r.insert(e, c);
        return r;
    }

    // Widen per-variable lower bounds (a declared capability, not a rewrite).
    Series relaxed_lower(const std::vector<int>& new_lower) const {
        std::vector<int> nl = merge_lower(lower_, new_lower);
        if (nl == lower_) return *this;
        Series r(vars_, trunc_, std::move(nl));
        r.terms_ = terms_;
        return r;
    }

    std::string var_list() const {
        std::string s = "[";
        for (std::size_t i = 0; i < vars_.size(); ++i) s += (i ? "," : "") + vars_[i];
        return s + "]";
    }

private:
    std::vector<std::string> vars_;
    int trunc_;
    std::vector<int> lower_;
    TermMap terms_;

    static std::vector<int> merge_lower(const std::vector<int>& a, const std::vector<int>& b) {
        std::vector<int> r(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) r[i] = std::min(a[i], b[i]);
        return r;
    }

    static std::string exp_string(const Exponents& e) {
        std::string s = "(";
        for (std::size_t i = 0; i < e.size(); ++i) s += (i ? "," : "") + std::to_string(e[i]);
        return s + ")";
    }

    static Complex ipow(Complex x, int n) {
        if (n < 0) return Complex(1.0, 0.0) / ipow(x, -n);
        Complex r(1.0, 0.0);
        while (n) {
            if (n & 1) r *= x;
            x *= x;
            n >>= 1;
        }
        return r;
    }

    void check_exponents(const Exponents& e) const {
        if (e.size() != vars_.size())
            throw domain_error("exponent tuple length " + std::to_string(e.size()) +
                               " does not match variable count " + std::to_string(vars_.size()));
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i] < lower_[i])
                throw domain_error("exponent " + std::to_string(e[i]) + " of '" + vars_[i] +
                                   "' is below the declared lower bound " + std::to_string(lower_[i]));
        if (total_degree(e) > trunc_)
            throw domain_error("term of total degree " + std::to_string(total_degree(e)) +
                               " exceeds truncation " + std::to_string(trunc_));
    }

    void insert(Exponents e, Complex c) {
        check_exponents(e);
        if (std::abs(c) <= kStructuralZero) return;
        terms_[std::move(e)] = c;
    }

    void add_to(const Exponents& e, Complex c) {
        check_exponents(e);
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            if (std::abs(c) > kStructuralZero) terms_[e] = c;
            return;
        }
        it->second += c;
        if (std::abs(it->second) <= kStructuralZero) terms_.erase(it);
    }

    void check_same_vars(const Series& o) const {
        if (vars_ != o.vars_)
            throw domain_error("variable sets differ: " + var_list() + " vs " + o.var_list());
    }

    static Series compose_rec(const std::vector<std::pair<Exponents, Complex>>& terms, std::size_t vi,
                              const std::vector<Series>& X, const std::vector<std::optional<Series>>& Y,
                              int work, const std::vector<int>& wl) {
        const std::vector<std::string>& tvars = X[0].vars();
        if (vi == X.size()) {
            Series r(tvars, work, wl);
            Complex c(0.0, 0.0);
            for (const auto& [e, v] : terms) c += v;
            if (std::abs(c) > kStructuralZero) r.insert(Exponents(tvars.size(), 0), c);
            return r;
        }
        std::map<int, std::vector<std::pair<Exponents, Complex>>> buckets;
        for (const auto& t : terms) buckets[t.first[vi]].push_back(t);
        Series pos(tvars, work, wl);
        Series neg(tvars, work, wl);
        // non-negative exponents, Horner from the highest down
        {
            std::vector<int> keys;
            for (const auto& [j, b] : buckets)
                if (j >= 0) keys.push_back(j);
            std::sort(keys.rbegin(), keys.rend());
            if (!keys.empty()) {
                Series acc = compose_rec(buckets[keys[0]], vi + 1, X, Y, work, wl);
                for (std::size_t i = 1; i < keys.size(); ++i) {
                    for (int p = 0; p < keys[i - 1] - keys[i]; ++p) acc = (acc * X[vi]).truncated(work);
                    acc = acc + compose_rec(buckets[keys[i]], vi + 1, X, Y, work, wl);
                }
                for (int p = 0; p < keys.back(); ++p) acc = (acc * X[vi]).truncated(work);
                pos = acc;
            }
        }
        // negative exponents: Horner in X on the offsets from the most
        // negative power, then one reciprocal power to shift down
        {
            std::vector<int> keys;
            for (const auto& [j, b] : buckets)
                if (j < 0) keys.push_back(j);
            std::sort(keys.rbegin(), keys.rend());
            if (!keys.empty()) {
                Series acc = compose_rec(buckets[keys[0]], vi + 1, X, Y, work, wl);
                for (std::size_t i = 1; i < keys.size(); ++i) {
                    for (int p = 0; p < keys[i - 1] - keys[i]; ++p) acc = (acc * X[vi]).truncated(work);
                    acc = acc + compose_rec(buckets[keys[i]], vi + 1, X, Y, work, wl);
                }
                const Series& y = *Y[vi];
                for (int p = 0; p < -keys.back(); ++p) acc = (acc * y).truncated(work);
                neg = acc;
            }
        }
        return pos + neg;
    }
};

} // namespace plumb
