#include <carnot/hypo.hpp>
#include <carnot/rng.hpp>

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace carnot {

FieldFamily counterexample_family()
{
    const int q = 5;
    FieldFamily f;
    f.dim = q;
    f.name = "counterexample";
    f.base_point.assign(q, Rational(0));
    f.coordinate_weights = std::vector<int>{1, 1, 3, 2, 1};

    PolyVectorField z1(q), z2(q), z3(q);
    z1.coeff[0] = Polynomial::constant(q, 1);
    z1.coeff[2] = Polynomial::variable(q, 0); // x1 d3
    z2.coeff[1] = Polynomial::constant(q, 1);
    z2.coeff[2] = Polynomial::variable(q, 3); // x4 d3
    z2.coeff[3] = Polynomial::variable(q, 4); // x5 d4
    z3.coeff[4] = Polynomial::constant(q, 1);
    f.fields = {std::move(z1), std::move(z2), std::move(z3)};
    return f;
}

FieldFamily family_from_frame(const LeftInvariantFrame& frame)
{
    FieldFamily f;
    f.dim = frame.dim();
    f.name = frame.algebra.name();
    f.base_point.assign(f.dim, Rational(0));
    f.fields = frame.horizontal();
    return f;
}

namespace {

std::vector<Rational> eval_at(const PolyVectorField& v, std::span<const Rational> x)
{
    return v.evaluate(x);
}

/// All bracket words up to max_depth in (depth, lexicographic) order, with
/// fields memoized by suffix.
struct WordTable {
    std::vector<BracketWord> words; // enumeration order
    std::map<std::vector<int>, int> index;

    WordTable(const FieldFamily& f, int max_depth)
    {
        const int n = static_cast<int>(f.fields.size());
        std::vector<std::vector<int>> level;
        for (int i = 0; i < n; ++i) {
            words.push_back({{i}, f.fields[i]});
            index[{i}] = static_cast<int>(words.size()) - 1;
            level.push_back({i});
        }
        for (int d = 2; d <= max_depth; ++d) {
            std::vector<std::vector<int>> next;
            // Lexicographic within the depth: extend every shorter word by
            // every letter, sorted by (prefix, letter).
            for (const auto& base : level) {
                for (int i = 0; i < n; ++i) {
                    std::vector<int> wrd;
                    wrd.reserve(base.size() + 1);
                    wrd.insert(wrd.end(), base.begin(), base.end());
                    wrd.push_back(i);
                    // field([w0..wk]) = [X_{w0}, field([w1..wk])]
                    std::vector<int> suffix(wrd.begin() + 1, wrd.end());
                    const auto& inner = words[index.at(suffix)].field;
                    words.push_back(
                        {wrd, PolyVectorField::bracket(f.fields[wrd[0]], inner)});
                    index[wrd] = static_cast<int>(words.size()) - 1;
                    next.push_back(std::move(wrd));
                }
            }
            level = std::move(next);
        }
    }
};

std::vector<int> flag_dims_at(const WordTable& table, int q, int max_depth,
                              std::span<const Rational> x)
{
    RankAccumulator acc(q);
    std::vector<int> dims;
    size_t idx = 0;
    for (int d = 1; d <= max_depth; ++d) {
        while (idx < table.words.size() &&
               static_cast<int>(table.words[idx].letters.size()) == d) {
            acc.insert(eval_at(table.words[idx].field, x));
            ++idx;
        }
        dims.push_back(acc.rank());
        if (acc.rank() == q) break;
    }
    return dims;
}

} // namespace

FlagReport bracket_flag(const FieldFamily& f, int max_depth, int probe_points,
                        uint64_t seed, const Rational& probe_halfwidth)
{
    if (f.dim <= 0 || f.fields.empty())
        throw std::invalid_argument("family needs at least one field");
    const int q = f.dim;
    WordTable table(f, max_depth);

    FlagReport report;
    report.probe_points = probe_points;

    // Greedy adapted basis in enumeration order, exact ranks.
    RankAccumulator acc(q);
    size_t idx = 0;
    for (int d = 1; d <= max_depth; ++d) {
        while (idx < table.words.size() &&
               static_cast<int>(table.words[idx].letters.size()) == d) {
            const auto& w = table.words[idx];
            std::vector<Rational> v = eval_at(w.field, f.base_point);
            if (acc.insert(std::move(v))) {
                report.adapted_basis.push_back(w);
                report.basis_layer.push_back(d);
            }
            ++idx;
        }
        report.dims.push_back(acc.rank());
        if (acc.rank() == q) {
            report.step = d;
            break;
        }
    }
    report.hoermander = report.step.has_value();

    if (report.hoermander) {
        report.eval_matrix = RationalMatrix(q, q);
        for (int c = 0; c < q; ++c) {
            const auto v = eval_at(report.adapted_basis[c].field, f.base_point);
            for (int r = 0; r < q; ++r) report.eval_matrix(r, c) = v[r];
        }
        // Coordinate weights: explicit override, else read off a
        // permutation-shaped evaluation matrix.
        if (f.coordinate_weights) {
            report.coordinate_weights = *f.coordinate_weights;
        } else {
            bool permutation = true;
            std::vector<int> weights(q, 0);
            for (int c = 0; c < q && permutation; ++c) {
                int hits = 0, row = -1;
                for (int r = 0; r < q; ++r) {
                    const auto& val = report.eval_matrix(r, c);
                    if (val == 1 || val == -1) {
                        ++hits;
                        row = r;
                    } else if (val != 0) {
                        permutation = false;
                    }
                }
                if (hits != 1) permutation = false;
                else weights[row] = report.basis_layer[c];
            }
            if (permutation) report.coordinate_weights = std::move(weights);
        }
    }

    // Regularity probe: exact flag dimensions at random rational points.
    report.regular = report.hoermander;
    Rng rng(seed);
    const long denom = 256;
    for (int p = 0; p < probe_points && report.regular; ++p) {
        std::vector<Rational> x(q);
        for (int i = 0; i < q; ++i) {
            const long num = static_cast<long>(rng.below(2 * denom + 1)) - denom;
            x[i] = f.base_point[i] + probe_halfwidth * Rational(num, denom);
        }
        if (flag_dims_at(table, q, max_depth, x) != report.dims) report.regular = false;
    }
    return report;
}

AdaptedCoordinates adapted_coordinates(const FieldFamily& f, const FlagReport& flag)
{
    if (!flag.hoermander)
        throw std::invalid_argument("adapted coordinates need a full flag");
    const int q = f.dim;
    auto inv = flag.eval_matrix.inverse();
    if (!inv)
        throw std::logic_error("singular evaluation matrix contradicts the flag rank");

    AdaptedCoordinates out;
    out.change = flag.eval_matrix;
    out.inverse = *inv;

    // x = xbar + M y as substitution polynomials.
    std::vector<Polynomial> subst(q, Polynomial(q));
    for (int r = 0; r < q; ++r) {
        Polynomial p = Polynomial::constant(q, f.base_point[r]);
        for (int c = 0; c < q; ++c) {
            const auto& m = out.change(r, c);
            if (m != 0) p += Polynomial::variable(q, c) * m;
        }
        subst[r] = std::move(p);
    }

    out.transformed.dim = q;
    out.transformed.name = f.name + "/adapted";
    out.transformed.base_point.assign(q, Rational(0));
    std::vector<int> weights(q);
    for (int c = 0; c < q; ++c) weights[c] = flag.basis_layer[c];
    out.transformed.coordinate_weights = std::move(weights);

    for (const auto& field : f.fields) {
        // b(y) = M^{-1} a(xbar + M y)
        std::vector<Polynomial> a(q);
        for (int k = 0; k < q; ++k) a[k] = field.coeff[k].substitute(subst);
        PolyVectorField g(q);
        for (int r = 0; r < q; ++r) {
            Polynomial acc(q);
            for (int k = 0; k < q; ++k) {
                const auto& m = out.inverse(r, k);
                if (m != 0 && !a[k].is_zero()) acc += a[k] * m;
            }
            g.coeff[r] = std::move(acc);
        }
        out.transformed.fields.push_back(std::move(g));
    }
    return out;
}

ZetaTable zeta_table(const FieldFamily& f, const FlagReport& flag)
{
    if (!flag.hoermander) throw std::invalid_argument("zeta table needs a full flag");
    const int q = f.dim;
    for (const auto& b : f.base_point)
        if (b != 0)
            throw std::invalid_argument(
                "zeta table needs the base point at the origin; use adapted_coordinates");
    if (flag.coordinate_weights.empty())
        throw std::invalid_argument(
            "zeta table needs per-coordinate weights (permutation evaluations or override)");

    ZetaTable z;
    z.dim = q;
    z.weights = flag.coordinate_weights;
    z.adapted_fields.assign(q, PolyVectorField(q));
    z.zeta.assign(q, std::vector<Polynomial>(q, Polynomial(q)));

    for (int b = 0; b < q; ++b) {
        const auto v = flag.adapted_basis[b].field.evaluate(f.base_point);
        int coord = -1;
        bool flip = false;
        for (int r = 0; r < q; ++r) {
            if ((v[r] == 1 || v[r] == -1) && coord < 0) {
                coord = r;
                flip = v[r] == -1;
            } else if (v[r] != 0) {
                throw std::invalid_argument(
                    "basis evaluations are not coordinate directions; use adapted_coordinates");
            }
        }
        if (coord < 0 || z.weights[coord] != flag.basis_layer[b])
            throw std::invalid_argument("coordinate weights disagree with the flag layers");
        // A sign flip keeps the basis adapted; normalize to +e_c.
        PolyVectorField field = flag.adapted_basis[b].field;
        if (flip)
            for (auto& p : field.coeff) p = -p;
        for (int c = 0; c < q; ++c) {
            z.zeta[coord][c] = field.coeff[c];
            if (c == coord) z.zeta[coord][c] -= Polynomial::constant(q, 1);
        }
        z.adapted_fields[coord] = std::move(field);
    }
    for (int c = 0; c < q; ++c)
        if (z.weights[c] == 1) {
            z.horizontal.push_back(z.adapted_fields[c]);
            z.horizontal_coords.push_back(c);
        }
    return z;
}

WellAdaptedReport well_adapted_check(const ZetaTable& z)
{
    WellAdaptedReport report;
    for (int l = 0; l < z.dim; ++l) {
        if (z.weights[l] != 1) continue;
        for (int lp = 0; lp < z.dim; ++lp) {
            if (z.weights[lp] < 3) continue;
            const long cutoff = z.weights[lp] - 2;
            for (const auto& [e, c] : z.zeta[l][lp].terms()) {
                long wd = 0;
                for (int i = 0; i < z.dim; ++i) wd += static_cast<long>(e[i]) * z.weights[i];
                if (wd <= cutoff)
                    report.violations.push_back({l, lp, e, c});
            }
        }
    }
    report.well_adapted = report.violations.empty();
    return report;
}

Step3Repair step3_repair(const FieldFamily& f, const ZetaTable& z)
{
    const int q = z.dim;
    const int step = *std::max_element(z.weights.begin(), z.weights.end());
    if (step > 3)
        throw std::invalid_argument("the quadratic repair is a step <= 3 construction");

    // Linear weight-1 Taylor coefficients of the weight-3 columns:
    // coeff[l][i][c'] with l, i weight-1 coordinates.
    std::vector<int> h; // weight-1 coordinates
    for (int c = 0; c < q; ++c)
        if (z.weights[c] == 1) h.push_back(c);

    auto linear_coeff = [&](int l, int i, int cp) -> Rational {
        Polynomial::Exponents e(q, 0);
        e[i] = 1;
        const auto it = z.zeta[l][cp].terms().find(e);
        return it == z.zeta[l][cp].terms().end() ? Rational(0) : it->second;
    };

    Step3Repair rep;
    rep.symmetry_ok = true;
    for (int cp = 0; cp < q; ++cp) {
        if (z.weights[cp] < 3) continue;
        for (int a : h)
            for (int b : h)
                if (linear_coeff(a, b, cp) != linear_coeff(b, a, cp)) rep.symmetry_ok = false;
    }
    if (!rep.symmetry_ok)
        throw std::logic_error("mixed-partial symmetry failed; the flag cannot be regular");

    // Dual frame D_l = d_l + sum_{c'} (sum_i coeff x_i) d_{c'} for weight-1 l.
    rep.dual_frame.assign(q, PolyVectorField(q));
    bool any = false;
    for (int c = 0; c < q; ++c) {
        rep.dual_frame[c] = PolyVectorField::coordinate(q, c);
        if (z.weights[c] != 1) continue;
        for (int cp = 0; cp < q; ++cp) {
            if (z.weights[cp] < 3) continue;
            Polynomial corr(q);
            for (int i : h) {
                const Rational cf = linear_coeff(c, i, cp);
                if (cf != 0) corr += Polynomial::variable(q, i) * cf;
            }
            if (!corr.is_zero()) {
                rep.dual_frame[c].coeff[cp] += corr;
                any = true;
            }
        }
    }
    rep.identity = !any;

    // Integrate: y_{c'} = x_{c'} - 1/2 sum_{l,i} coeff x_l x_i; inverse flips
    // the sign (the correction involves only unchanged weight-1 coordinates).
    rep.forward.assign(q, Polynomial(q));
    rep.inverse.assign(q, Polynomial(q));
    for (int c = 0; c < q; ++c) {
        rep.forward[c] = Polynomial::variable(q, c);
        rep.inverse[c] = Polynomial::variable(q, c);
        if (z.weights[c] < 3) continue;
        Polynomial corr(q);
        for (int a : h)
            for (int b : h) {
                const Rational cf = linear_coeff(a, b, c);
                if (cf != 0)
                    corr += Polynomial::variable(q, a) * Polynomial::variable(q, b) * cf *
                            Rational(1, 2);
            }
        rep.forward[c] -= corr;
        rep.inverse[c] += corr;
    }

    // Rewrite the family: V -> sum_k V(y_k)(x(y)) d_k.
    rep.repaired.dim = q;
    rep.repaired.name = f.name + "/repaired";
    rep.repaired.base_point.assign(q, Rational(0));
    rep.repaired.coordinate_weights = z.weights;
    for (const auto& field : f.fields) {
        PolyVectorField g(q);
        for (int k = 0; k < q; ++k)
            g.coeff[k] = field.apply(rep.forward[k]).substitute(rep.inverse);
        rep.repaired.fields.push_back(std::move(g));
    }
    return rep;
}

GeneralRadial general_radial(const ZetaTable& z, int truncation_excess)
{
    const int q = z.dim;
    const int step = *std::max_element(z.weights.begin(), z.weights.end());
    const long cutoff = step + truncation_excess;

    std::vector<Polynomial> tau(q);
    for (int c = 0; c < q; ++c)
        tau[c] = Polynomial::variable(q, c) * Rational(z.weights[c]);

    GeneralRadial out;
    out.sigma = tau;
    for (long j = 0; j < cutoff; ++j) {
        // tau <- -(tau . zeta), truncated
        std::vector<Polynomial> next(q, Polynomial(q));
        bool nonzero = false;
        for (int c = 0; c < q; ++c) {
            Polynomial acc(q);
            for (int l = 0; l < q; ++l) {
                if (tau[l].is_zero() || z.zeta[l][c].is_zero()) continue;
                acc -= tau[l] * z.zeta[l][c];
            }
            next[c] = acc.truncate_weighted(z.weights, cutoff);
            if (!next[c].is_zero()) nonzero = true;
        }
        tau = std::move(next);
        if (!nonzero) break;
        for (int c = 0; c < q; ++c) out.sigma[c] += tau[c];
    }
    for (int c = 0; c < q; ++c)
        out.sigma[c] = out.sigma[c].truncate_weighted(z.weights, cutoff);

    // Exact residual of the truncated solution.
    out.sigma_tilde.assign(q, Polynomial(q));
    for (int c = 0; c < q; ++c) {
        Polynomial acc = out.sigma[c] - Polynomial::variable(q, c) * Rational(z.weights[c]);
        for (int l = 0; l < q; ++l) {
            if (out.sigma[l].is_zero() || z.zeta[l][c].is_zero()) continue;
            acc += out.sigma[l] * z.zeta[l][c];
        }
        out.sigma_tilde[c] = std::move(acc);
    }
    out.exact = std::all_of(out.sigma_tilde.begin(), out.sigma_tilde.end(),
                            [](const Polynomial& p) { return p.is_zero(); });

    out.field = PolyVectorField(q);
    for (int c = 0; c < q; ++c)
        out.field.coeff[c] =
            Polynomial::variable(q, c) * Rational(z.weights[c]) + out.sigma_tilde[c];
    return out;
}

RadialQualityReport radial_quality_checks(const ZetaTable& z, const GeneralRadial& r,
                                          const ShellSpec& shells)
{
    const int q = z.dim;
    auto gauge = make_gauge(z.weights);
    const int w = gauge->exponent();
    const int Q = std::accumulate(z.weights.begin(), z.weights.end(), 0);

    RadialQualityReport report;
    const Polynomial div_residual =
        r.field.divergence() - Polynomial::constant(q, Rational(Q));
    report.div_exact = div_residual.is_zero();
    report.lambda_exact = r.exact;

    auto scan_order = [&](const GaugeExpr& expr, double alpha) {
        const GaugeExprScanFunction fn(expr, {}, 0);
        const auto rep = symbol_scan(fn, *gauge, alpha, 0, shells);
        return rep.words.front().verdict;
    };

    // |div R - Q| / rho bounded.
    report.div_verdict =
        scan_order(GaugeExpr::from_polynomial(gauge, div_residual), 1.0);

    // lambda - 1 = R(rho^w)/(w rho^w) - 1 = (sum sigma~_c d_c rho^w) rho^{-w} / w.
    GaugeExpr lambda_minus_1(gauge);
    {
        Polynomial num(q);
        for (int c = 0; c < q; ++c) {
            if (r.sigma_tilde[c].is_zero()) continue;
            num += r.sigma_tilde[c] * gauge->rho_pow_w().partial(c);
        }
        lambda_minus_1 = GaugeExpr::from_polynomial(gauge, num * Rational(1, w), -w);
    }
    report.lambda_verdict = scan_order(lambda_minus_1, 1.0);
    report.r_lambda_verdict = scan_order(lambda_minus_1.apply_field(r.field), 1.0);

    for (int c = 0; c < q; ++c) {
        report.sigma_orders.emplace_back(
            c, scan_order(GaugeExpr::from_polynomial(gauge, r.sigma[c]),
                          static_cast<double>(z.weights[c])));
        report.sigma_tilde_orders.emplace_back(
            c, scan_order(GaugeExpr::from_polynomial(gauge, r.sigma_tilde[c]),
                          static_cast<double>(z.weights[c] + 1)));
    }

    bool all_bounded = report.div_verdict == ScanVerdict::Bounded &&
                       report.lambda_verdict == ScanVerdict::Bounded &&
                       report.r_lambda_verdict == ScanVerdict::Bounded;
    bool any_unbounded = report.div_verdict == ScanVerdict::Unbounded ||
                         report.lambda_verdict == ScanVerdict::Unbounded ||
                         report.r_lambda_verdict == ScanVerdict::Unbounded;
    for (const auto& [c, v] : report.sigma_orders) {
        all_bounded = all_bounded && v == ScanVerdict::Bounded;
        any_unbounded = any_unbounded || v == ScanVerdict::Unbounded;
    }
    for (const auto& [c, v] : report.sigma_tilde_orders) {
        all_bounded = all_bounded && v == ScanVerdict::Bounded;
        any_unbounded = any_unbounded || v == ScanVerdict::Unbounded;
    }
    report.overall = any_unbounded  ? ScanVerdict::Unbounded
                     : all_bounded ? ScanVerdict::Bounded
                                   : ScanVerdict::Inconclusive;
    return report;
}

} // namespace carnot
