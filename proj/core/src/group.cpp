#include <carnot/group.hpp>

#include <functional>
#include <stdexcept>

namespace carnot {

std::vector<Rational> bernoulli_numbers(int n_max)
{
    std::vector<Rational> b(n_max + 1);
    b[0] = 1;
    for (int n = 1; n <= n_max; ++n) {
        Rational acc(0);
        for (int j = 0; j < n; ++j) acc += Rational(binomial(n + 1, j)) * b[j];
        b[n] = -acc / Rational(n + 1);
    }
    return b;
}

namespace {

/// Bracket of two elements with polynomial coordinates.
std::vector<Polynomial> bracket_poly(const StratifiedAlgebra& a,
                                     const std::vector<Polynomial>& u,
                                     const std::vector<Polynomial>& v, int nvars)
{
    std::vector<Polynomial> out(a.dim(), Polynomial(nvars));
    for (const auto& e : a.entries()) {
        Polynomial f = u[e.i] * v[e.j] - u[e.j] * v[e.i];
        if (f.is_zero()) continue;
        out[e.k] += f * e.c;
    }
    return out;
}

/// Right-nested bracket of a word of elements given by indices into `letters`.
std::vector<Polynomial> word_bracket_poly(const StratifiedAlgebra& a,
                                          const std::vector<const std::vector<Polynomial>*>& letters,
                                          int nvars)
{
    std::vector<Polynomial> acc = *letters.back();
    for (int p = static_cast<int>(letters.size()) - 2; p >= 0; --p)
        acc = bracket_poly(a, *letters[p], acc, nvars);
    return acc;
}

} // namespace

GroupLaw bch_symbolic(const StratifiedAlgebra& a)
{
    const int q = a.dim();
    const int m = a.step();
    const int nvars = 2 * q;

    std::vector<Polynomial> u(q), v(q);
    for (int i = 0; i < q; ++i) {
        u[i] = Polynomial::variable(nvars, i);
        v[i] = Polynomial::variable(nvars, q + i);
    }

    std::vector<Polynomial> mu(q, Polynomial(nvars));
    for (int i = 0; i < q; ++i) mu[i] = u[i] + v[i];

    // Dynkin's commutator series: sum over block tuples (r_1,s_1,..,r_k,s_k)
    // with r_i + s_i >= 1, coefficient (-1)^{k-1} / (k * N * prod r_i! s_i!)
    // where N is the total letter count. Nilpotency truncates at N <= m.
    struct Block {
        int r, s;
    };
    std::vector<Block> blocks;
    std::function<void(int)> recurse = [&](int total) {
        if (!blocks.empty()) {
            const int k = static_cast<int>(blocks.size());
            const int N = total;
            if (N >= 2) {
                BigInt denom = BigInt(k) * N;
                for (const auto& b : blocks) denom *= factorial(b.r) * factorial(b.s);
                Rational coeff = Rational(1, denom);
                if (k % 2 == 0) coeff = -coeff;

                std::vector<const std::vector<Polynomial>*> letters;
                for (const auto& b : blocks) {
                    for (int i = 0; i < b.r; ++i) letters.push_back(&u);
                    for (int i = 0; i < b.s; ++i) letters.push_back(&v);
                }
                // Words ending in a repeated letter vanish; skip the bracket work.
                const size_t L = letters.size();
                if (letters[L - 1] != letters[L - 2]) {
                    auto val = word_bracket_poly(a, letters, nvars);
                    for (int i = 0; i < q; ++i) {
                        if (val[i].is_zero()) continue;
                        mu[i] += val[i] * coeff;
                    }
                }
            }
        }
        if (total >= m) return;
        for (int r = 0; total + r <= m; ++r) {
            for (int s = (r == 0 ? 1 : 0); total + r + s <= m; ++s) {
                blocks.push_back({r, s});
                recurse(total + r + s);
                blocks.pop_back();
            }
        }
    };
    recurse(0);

    return GroupLaw{a, std::move(mu)};
}

std::vector<Polynomial> GroupLaw::associativity_residual() const
{
    const int q = algebra.dim();
    const int nv = 3 * q;
    // mu(u,v) in 3q vars, then mu(mu(u,v), w); same on the other side.
    std::vector<Polynomial> uv(q), vw(q);
    {
        std::vector<Polynomial> repl(2 * q);
        for (int i = 0; i < 2 * q; ++i) repl[i] = Polynomial::variable(nv, i);
        for (int i = 0; i < q; ++i) uv[i] = mu[i].substitute(repl);
        for (int i = 0; i < 2 * q; ++i) repl[i] = Polynomial::variable(nv, q + i);
        for (int i = 0; i < q; ++i) vw[i] = mu[i].substitute(repl);
    }
    std::vector<Polynomial> left(q), right(q);
    {
        std::vector<Polynomial> repl(2 * q);
        for (int i = 0; i < q; ++i) repl[i] = uv[i];
        for (int i = 0; i < q; ++i) repl[q + i] = Polynomial::variable(nv, 2 * q + i);
        for (int i = 0; i < q; ++i) left[i] = mu[i].substitute(repl);
        for (int i = 0; i < q; ++i) repl[i] = Polynomial::variable(nv, i);
        for (int i = 0; i < q; ++i) repl[q + i] = vw[i];
        for (int i = 0; i < q; ++i) right[i] = mu[i].substitute(repl);
    }
    std::vector<Polynomial> res(q);
    for (int i = 0; i < q; ++i) res[i] = left[i] - right[i];
    return res;
}

std::vector<Polynomial> GroupLaw::translation(std::span<const Rational> g, bool left) const
{
    const int q = algebra.dim();
    if (static_cast<int>(g.size()) != q) throw std::invalid_argument("point dimension mismatch");
    std::vector<Polynomial> repl(2 * q);
    for (int i = 0; i < q; ++i) {
        const Polynomial c = Polynomial::constant(q, g[i]);
        const Polynomial x = Polynomial::variable(q, i);
        repl[i] = left ? c : x;
        repl[q + i] = left ? x : c;
    }
    std::vector<Polynomial> out(q);
    for (int i = 0; i < q; ++i) out[i] = mu[i].substitute(repl);
    return out;
}

std::vector<Rational> bch(const StratifiedAlgebra& a, std::span<const Rational> u,
                          std::span<const Rational> v)
{
    const auto law = bch_symbolic(a);
    std::vector<Rational> point(u.begin(), u.end());
    point.insert(point.end(), v.begin(), v.end());
    std::vector<Rational> out(a.dim());
    for (int i = 0; i < a.dim(); ++i) out[i] = law.mu[i].evaluate(point);
    return out;
}

std::vector<double> bch(const StratifiedAlgebra& a, std::span<const double> u,
                        std::span<const double> v)
{
    const auto law = bch_symbolic(a);
    std::vector<double> point(u.begin(), u.end());
    point.insert(point.end(), v.begin(), v.end());
    std::vector<double> out(a.dim());
    for (int i = 0; i < a.dim(); ++i) out[i] = law.mu[i].evaluate(point);
    return out;
}

std::vector<Rational> dexp_frame_coefficients(const StratifiedAlgebra& a,
                                              std::span<const Rational> v,
                                              std::span<const Rational> w)
{
    const int q = a.dim();
    if (static_cast<int>(v.size()) != q || static_cast<int>(w.size()) != q)
        throw std::invalid_argument("element dimension mismatch");
    std::vector<Rational> acc(w.begin(), w.end());
    std::vector<Rational> ad(w.begin(), w.end());
    std::vector<Rational> out(acc);
    Rational sign(1);
    for (int n = 1; n < a.step(); ++n) {
        ad = a.bracket(v, ad);
        sign = -sign;
        const Rational c = sign / Rational(factorial(n + 1));
        for (int i = 0; i < q; ++i) out[i] += c * ad[i];
    }
    return out;
}

std::vector<Rational> dilate(const StratifiedAlgebra& a, const Rational& r,
                             std::span<const Rational> x)
{
    if (r <= 0) throw std::domain_error("dilation requires r > 0");
    std::vector<Rational> out(x.begin(), x.end());
    for (int l = 0; l < a.dim(); ++l) out[l] *= rational_pow(r, a.weight(l));
    return out;
}

std::vector<double> dilate(const StratifiedAlgebra& a, double r, std::span<const double> x)
{
    if (!(r > 0)) throw std::domain_error("dilation requires r > 0");
    std::vector<double> out(x.begin(), x.end());
    for (int l = 0; l < a.dim(); ++l) out[l] *= std::pow(r, a.weight(l));
    return out;
}

namespace {

/// ad(X)^n(e_l) and friends, where X = sum x_i Y_i is the generic element.
std::vector<Polynomial> generic_element(const StratifiedAlgebra& a)
{
    std::vector<Polynomial> x(a.dim());
    for (int i = 0; i < a.dim(); ++i) x[i] = Polynomial::variable(a.dim(), i);
    return x;
}

} // namespace

LeftInvariantFrame left_invariant_fields(const StratifiedAlgebra& a)
{
    const int q = a.dim();
    const int m = a.step();
    const auto bern = bernoulli_numbers(m);
    const auto X = generic_element(a);

    LeftInvariantFrame frame{a, {}, {}};
    frame.fields.reserve(q);
    frame.zeta.assign(q, std::vector<Polynomial>(q, Polynomial(q)));

    for (int l = 0; l < q; ++l) {
        std::vector<Polynomial> acc(q, Polynomial(q));
        acc[l] = Polynomial::constant(q, 1);
        std::vector<Polynomial> ad = acc;
        std::vector<Polynomial> field = acc; // n = 0 term, B_0 = 1
        Rational sign(1);
        for (int n = 1; n < m; ++n) {
            ad = bracket_poly(a, X, ad, q);
            sign = -sign;
            if (bern[n] == 0) continue;
            const Rational c = sign * bern[n] / Rational(factorial(n));
            for (int k = 0; k < q; ++k)
                if (!ad[k].is_zero()) field[k] += ad[k] * c;
        }
        for (int k = 0; k < q; ++k) {
            frame.zeta[l][k] = field[k];
            if (k == l) frame.zeta[l][k] -= Polynomial::constant(q, 1);
        }
        frame.fields.emplace_back(std::move(field));
    }
    return frame;
}

std::vector<std::vector<Polynomial>> frame_from_group_law(const GroupLaw& law)
{
    const int q = law.algebra.dim();
    std::vector<Polynomial> repl(2 * q);
    for (int i = 0; i < q; ++i) {
        repl[i] = Polynomial::variable(q, i);
        repl[q + i] = Polynomial(q); // v = 0
    }
    std::vector<std::vector<Polynomial>> zeta(q, std::vector<Polynomial>(q, Polynomial(q)));
    for (int lp = 0; lp < q; ++lp) {
        for (int l = 0; l < q; ++l) {
            Polynomial d = law.mu[lp].partial(q + l).substitute(repl);
            if (l == lp) d -= Polynomial::constant(q, 1);
            zeta[l][lp] = std::move(d);
        }
    }
    return zeta;
}

RadialField radial_field(const StratifiedAlgebra& a, const LeftInvariantFrame& frame)
{
    const int q = a.dim();
    const int m = a.step();
    const auto X = generic_element(a);

    // Weighted generic element sum omega_l x_l Y_l.
    std::vector<Polynomial> wx(q);
    for (int l = 0; l < q; ++l)
        wx[l] = Polynomial::variable(q, l) * Rational(a.weight(l));

    std::vector<Polynomial> sigma = wx; // n = 0 term of the d exp series
    std::vector<Polynomial> ad = wx;
    Rational sign(1);
    for (int n = 1; n < m; ++n) {
        ad = bracket_poly(a, X, ad, q);
        sign = -sign;
        const Rational c = sign / Rational(factorial(n + 1));
        for (int k = 0; k < q; ++k)
            if (!ad[k].is_zero()) sigma[k] += ad[k] * c;
    }

    RadialField r;
    r.sigma = sigma;
    r.coordinate_form = PolyVectorField(q);
    for (int l = 0; l < q; ++l) r.coordinate_form.coeff[l] = wx[l];
    r.frame_form = PolyVectorField(q);
    for (int l = 0; l < q; ++l) {
        if (sigma[l].is_zero()) continue;
        for (int k = 0; k < q; ++k) r.frame_form.coeff[k] += sigma[l] * frame.fields[l].coeff[k];
    }
    return r;
}

Polynomial remarkable_identity_residual(const StratifiedAlgebra& a,
                                        const LeftInvariantFrame& frame,
                                        int lprime)
{
    const int q = a.dim();
    if (lprime < 0 || lprime >= q) throw std::out_of_range("basis index out of range");

    // T_l = sigma_l - omega_l x_l (the correction series alone).
    const auto rad = radial_field(a, frame);
    std::vector<Polynomial> T(q);
    for (int l = 0; l < q; ++l)
        T[l] = rad.sigma[l] - Polynomial::variable(q, l) * Rational(a.weight(l));

    Polynomial lhs = T[lprime];
    for (int l = 0; l < q; ++l) {
        if (T[l].is_zero() || frame.zeta[l][lprime].is_zero()) continue;
        lhs += T[l] * frame.zeta[l][lprime];
    }
    Polynomial rhs(q);
    for (int l = 0; l < q; ++l) {
        if (frame.zeta[l][lprime].is_zero()) continue;
        rhs -= Polynomial::variable(q, l) * Rational(a.weight(l)) * frame.zeta[l][lprime];
    }
    return lhs - rhs;
}

EulerIdentityResiduals euler_gauge_identity(const StratifiedAlgebra& a,
                                            const LeftInvariantFrame& frame,
                                            const Gauge& gauge)
{
    if (gauge.weights() != a.weights())
        throw std::invalid_argument("gauge was not built from this algebra's weights");
    const auto rad = radial_field(a, frame);
    const Polynomial& rw = gauge.rho_pow_w();
    const Polynomial scaled = rw * Rational(gauge.exponent());
    return {rad.coordinate_form.apply(rw) - scaled, rad.frame_form.apply(rw) - scaled};
}

Polynomial sublaplacian_apply(const LeftInvariantFrame& frame, const Polynomial& f)
{
    Polynomial out(f.nvars());
    for (int l = 0; l < frame.algebra.first_layer_dim(); ++l)
        out += frame.fields[l].apply(frame.fields[l].apply(f));
    return out;
}

GaugeExpr sublaplacian_apply(const LeftInvariantFrame& frame, const GaugeExpr& f)
{
    GaugeExpr out(f.gauge());
    for (int l = 0; l < frame.algebra.first_layer_dim(); ++l)
        out += f.apply_field(frame.fields[l]).apply_field(frame.fields[l]);
    return out;
}

} // namespace carnot
