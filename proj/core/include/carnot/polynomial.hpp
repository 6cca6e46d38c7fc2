#pragma once

#include <carnot/rational.hpp>

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <vector>

namespace carnot {

/// Exact multivariate polynomial over Q with dense exponent tuples.
/// Terms are kept in a canonical ordered map; zero coefficients are never
/// stored, so `is_zero()` and `==` are exact structural checks.
class Polynomial {
public:
    using Exponents = std::vector<int>;
    using TermMap = std::map<Exponents, Rational>;

    Polynomial() : nvars_(0) {}
    explicit Polynomial(int nvars) : nvars_(nvars) {}

    static Polynomial constant(int nvars, const Rational& c)
    {
        Polynomial p(nvars);
        p.add_term(Exponents(nvars, 0), c);
        return p;
    }
    static Polynomial variable(int nvars, int index)
    {
        Polynomial p(nvars);
        Exponents e(nvars, 0);
        e.at(index) = 1;
        p.add_term(std::move(e), Rational(1));
        return p;
    }

    int nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    const TermMap& terms() const { return terms_; }

    void add_term(Exponents e, const Rational& c)
    {
        if (c == 0) return;
        auto [it, inserted] = terms_.try_emplace(std::move(e), c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    Polynomial& operator+=(const Polynomial& o)
    {
        check_same_vars(o);
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    Polynomial& operator-=(const Polynomial& o)
    {
        check_same_vars(o);
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    Polynomial operator-() const
    {
        Polynomial r(nvars_);
        for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
        return r;
    }

    Polynomial& operator*=(const Rational& s)
    {
        if (s == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [e, c] : terms_) c *= s;
        return *this;
    }
    friend Polynomial operator*(Polynomial p, const Rational& s) { return p *= s; }
    friend Polynomial operator*(const Rational& s, Polynomial p) { return p *= s; }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b)
    {
        a.check_same_vars(b);
        Polynomial r(a.nvars_);
        Exponents e(a.nvars_);
        for (const auto& [ea, ca] : a.terms_) {
            for (const auto& [eb, cb] : b.terms_) {
                for (int i = 0; i < a.nvars_; ++i) e[i] = ea[i] + eb[i];
                r.add_term(e, ca * cb);
            }
        }
        return r;
    }

    Polynomial pow(int n) const
    {
        if (n < 0) throw std::domain_error("negative polynomial power");
        Polynomial acc = constant(nvars_, 1);
        for (int i = 0; i < n; ++i) acc = acc * (*this);
        return acc;
    }

    Polynomial partial(int var) const
    {
        Polynomial r(nvars_);
        for (const auto& [e, c] : terms_) {
            if (e[var] == 0) continue;
            Exponents d = e;
            d[var] -= 1;
            r.add_term(std::move(d), c * e[var]);
        }
        return r;
    }

    Rational evaluate(std::span<const Rational> x) const
    {
        Rational acc(0);
        for (const auto& [e, c] : terms_) {
            Rational t = c;
            for (int i = 0; i < nvars_; ++i)
                if (e[i]) t *= rational_pow(x[i], e[i]);
            acc += t;
        }
        return acc;
    }

    double evaluate(std::span<const double> x) const
    {
        double acc = 0;
        for (const auto& [e, c] : terms_) {
            double t = to_double(c);
            for (int i = 0; i < nvars_; ++i)
                for (int k = 0; k < e[i]; ++k) t *= x[i];
            acc += t;
        }
        return acc;
    }

    /// Substitutes repl[i] for variable i. All replacement polynomials must
    /// share a variable count, which becomes the result's.
    Polynomial substitute(std::span<const Polynomial> repl) const
    {
        if (static_cast<int>(repl.size()) != nvars_)
            throw std::invalid_argument("substitute: wrong replacement count");
        const int out_vars = repl.empty() ? 0 : repl[0].nvars();
        Polynomial r(out_vars);
        for (const auto& [e, c] : terms_) {
            Polynomial t = Polynomial::constant(out_vars, c);
            for (int i = 0; i < nvars_; ++i)
                if (e[i]) t = t * repl[i].pow(e[i]);
            r += t;
        }
        return r;
    }

    /// x_i -> r^{weights[i]} x_i, exactly.
    Polynomial dilate(std::span<const int> weights, const Rational& r) const
    {
        Polynomial out(nvars_);
        for (const auto& [e, c] : terms_) {
            long wd = 0;
            for (int i = 0; i < nvars_; ++i) wd += static_cast<long>(e[i]) * weights[i];
            out.add_term(e, c * rational_pow(r, wd));
        }
        return out;
    }

    long weighted_degree(const Exponents& e, std::span<const int> weights) const
    {
        long wd = 0;
        for (int i = 0; i < nvars_; ++i) wd += static_cast<long>(e[i]) * weights[i];
        return wd;
    }

    /// (min, max) weighted degree over stored terms.
    /// The zero polynomial returns the (+inf, -inf) sentinel pair.
    std::pair<long, long> weighted_degree_range(std::span<const int> weights) const
    {
        long lo = std::numeric_limits<long>::max();
        long hi = std::numeric_limits<long>::min();
        for (const auto& [e, c] : terms_) {
            const long wd = weighted_degree(e, weights);
            lo = std::min(lo, wd);
            hi = std::max(hi, wd);
        }
        return {lo, hi};
    }

    bool is_weighted_homogeneous(std::span<const int> weights, long degree) const
    {
        auto [lo, hi] = weighted_degree_range(weights);
        return is_zero() || (lo == degree && hi == degree);
    }

    Polynomial weighted_component(std::span<const int> weights, long degree) const
    {
        Polynomial r(nvars_);
        for (const auto& [e, c] : terms_)
            if (weighted_degree(e, weights) == degree) r.add_term(e, c);
        return r;
    }

    Polynomial truncate_weighted(std::span<const int> weights, long max_degree) const
    {
        Polynomial r(nvars_);
        for (const auto& [e, c] : terms_)
            if (weighted_degree(e, weights) <= max_degree) r.add_term(e, c);
        return r;
    }

    int total_degree() const
    {
        int d = 0;
        for (const auto& [e, c] : terms_)
            d = std::max(d, std::accumulate(e.begin(), e.end(), 0));
        return d;
    }

    bool operator==(const Polynomial& o) const
    {
        return nvars_ == o.nvars_ && terms_ == o.terms_;
    }

    /// Canonical text: monomials sorted by (total degree, exponent tuple),
    /// rationals rendered "p/q". Used by golden-file tests and the CLI.
    std::string to_string(const std::function<std::string(int)>& var_name = {}) const;

private:
    void check_same_vars(const Polynomial& o) const
    {
        if (nvars_ != o.nvars_)
            throw std::invalid_argument("polynomial variable count mismatch");
    }

    int nvars_;
    TermMap terms_;
};

/// Flattened double-precision view of a polynomial for quadrature and
/// sampling inner loops. Stateless evaluation, safe to share across threads.
class CompiledPolynomial {
public:
    CompiledPolynomial() = default;
    explicit CompiledPolynomial(const Polynomial& p);

    double operator()(std::span<const double> x) const;
    bool empty() const { return coeffs_.empty(); }
    int nvars() const { return nvars_; }

private:
    int nvars_ = 0;
    std::vector<double> coeffs_;
    std::vector<int> expos_; // nvars_ entries per term
};

} // namespace carnot
