// carnot: exact Carnot-group calculus and numerical verification from the
// command line. JSON reports go to stdout (or --output); human-readable
// summaries go to stderr. Exit codes: 0 = checks passed, 1 = a requested
// check failed, 2 = input error.

#include <carnot/hardy.hpp>
#include <carnot/hypo.hpp>
#include <carnot/io.hpp>
#include <carnot/parallel.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace carnot;

namespace {

struct Output {
    std::string path; // empty = stdout
    void emit(const Json& j) const
    {
        if (path.empty() || path == "-") {
            std::cout << j.dump(2) << "\n";
        } else {
            write_json_file(path, j);
        }
    }
};

int verdict_exit(ScanVerdict v, const std::string& expect)
{
    const std::string got = to_string(v);
    if (!expect.empty()) return got == expect ? 0 : 1;
    return v == ScanVerdict::Bounded ? 0 : 1;
}

CurveSpec parse_curve(const std::string& text, int dim)
{
    // "c0:p0,c1:p1,..." one pair per coordinate
    CurveSpec curve;
    std::istringstream in(text);
    std::string chunk;
    while (std::getline(in, chunk, ',')) {
        const auto colon = chunk.find(':');
        if (colon == std::string::npos)
            throw std::invalid_argument("curve entries are coeff:power pairs");
        curve.coeff.push_back(std::stod(chunk.substr(0, colon)));
        curve.power.push_back(std::stoi(chunk.substr(colon + 1)));
    }
    if (static_cast<int>(curve.coeff.size()) != dim)
        throw std::invalid_argument("curve needs one coeff:power pair per coordinate");
    return curve;
}

Json polys_to_text(const std::vector<Polynomial>& ps)
{
    Json arr = Json::array();
    for (const auto& p : ps) arr.push_back(p.to_string());
    return arr;
}

struct IdentityCheck {
    std::string name;
    bool pass;
    std::string residual;
};

std::vector<IdentityCheck> run_identities(const StratifiedAlgebra& a)
{
    std::vector<IdentityCheck> checks;
    auto poly_list = [](const std::vector<Polynomial>& ps) {
        for (const auto& p : ps)
            if (!p.is_zero()) return p.to_string();
        return std::string("0");
    };

    const auto law = bch_symbolic(a);
    {
        const auto res = law.associativity_residual();
        const bool pass = std::all_of(res.begin(), res.end(),
                                      [](const Polynomial& p) { return p.is_zero(); });
        checks.push_back({"associativity", pass, poly_list(res)});
    }

    const auto frame = left_invariant_fields(a);
    {
        const auto oracle = frame_from_group_law(law);
        bool pass = true;
        std::string res = "0";
        for (int l = 0; l < a.dim() && pass; ++l)
            for (int lp = 0; lp < a.dim() && pass; ++lp)
                if (!(frame.zeta[l][lp] == oracle[l][lp])) {
                    pass = false;
                    res = (frame.zeta[l][lp] - oracle[l][lp]).to_string();
                }
        checks.push_back({"frame_vs_translation_jacobian", pass, res});
    }
    {
        bool pass = true;
        std::string res = "0";
        for (int i = 0; i < a.dim() && pass; ++i)
            for (int j = 0; j < a.dim() && pass; ++j) {
                auto lhs = PolyVectorField::bracket(frame.fields[i], frame.fields[j]);
                PolyVectorField rhs(a.dim());
                for (const auto& [k, c] : a.basis_bracket(i, j))
                    for (int t = 0; t < a.dim(); ++t)
                        rhs.coeff[t] += frame.fields[k].coeff[t] * c;
                if (!(lhs == rhs)) {
                    pass = false;
                    res = "mismatch at [" + std::to_string(i + 1) + "," +
                          std::to_string(j + 1) + "]";
                }
            }
        checks.push_back({"frame_bracket_realization", pass, res});
    }
    {
        bool pass = true;
        for (int l = 0; l < a.dim(); ++l)
            if (!frame.fields[l].divergence().is_zero()) pass = false;
        checks.push_back({"frame_divergence_free", pass, pass ? "0" : "nonzero"});
    }
    const auto rad = radial_field(a, frame);
    {
        const Polynomial expect = Polynomial::constant(a.dim(), a.homogeneous_dimension());
        const Polynomial d1 = rad.coordinate_form.divergence() - expect;
        const Polynomial d2 = rad.frame_form.divergence() - expect;
        const bool pass = d1.is_zero() && d2.is_zero();
        checks.push_back({"radial_divergence_Q", pass, pass ? "0" : (d1 + d2).to_string()});
    }
    {
        bool pass = true;
        std::string res = "0";
        for (int lp = 0; lp < a.dim() && pass; ++lp) {
            const auto r = remarkable_identity_residual(a, frame, lp);
            if (!r.is_zero()) {
                pass = false;
                res = r.to_string();
            }
        }
        checks.push_back({"commutator_structure_identity", pass, res});
    }
    {
        const Gauge gauge(a.weights());
        const auto res = euler_gauge_identity(a, frame, gauge);
        const bool pass = res.coordinate_form.is_zero() && res.frame_form.is_zero();
        checks.push_back({"radial_gauge_identity", pass,
                          pass ? "0" : (res.coordinate_form + res.frame_form).to_string()});
    }
    {
        const bool pass = rad.frame_form == rad.coordinate_form;
        checks.push_back(
            {"radial_frame_equals_coordinate_form", pass, pass ? "0" : "mismatch"});
        bool homog = true;
        for (int l = 0; l < a.dim(); ++l)
            if (!rad.sigma[l].is_weighted_homogeneous(a.weights(), a.weight(l)))
                homog = false;
        checks.push_back({"sigma_weighted_homogeneity", homog, homog ? "0" : "inhomogeneous"});
    }
    return checks;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Exact computer algebra and numerical verification for "
                 "stratified Lie groups and hypoelliptic vector-field families"};
    app.require_subcommand(1);

    int threads = 0;
    app.add_option("--threads", threads, "cap on worker threads (0 = hardware)");
    Output out;
    app.add_option("--output,-o", out.path, "write the JSON report to this file");

    std::string algebra_name, family_name, function_text = "rho", expect, csv_path,
                curve_text, poly_text = "1", bump_name = "poly8", rational_r = "1/2",
                annulus_r0 = "0.5", annulus_r1 = "2";
    double target_order = 1.0, tolerance = 1e-5;
    std::vector<double> radii;
    int max_derivs = 3, shells_k = 10, samples = 256, points = 48, depth = 4,
        probe_points = 64, s_order = 1;
    long mc_samples = 1000000;
    uint64_t seed = 0;
    bool repaired = false;

    auto add_algebra = [&](CLI::App* cmd) {
        cmd->add_option("--algebra", algebra_name,
                        "preset (heisenberg, heisenberg2, engel, abelian<n>, free:g:m) "
                        "or JSON file")
            ->required();
    };
    auto add_family = [&](CLI::App* cmd) {
        cmd->add_option("--family", family_name,
                        "counterexample, a preset algebra name, or a family JSON file")
            ->required();
    };

    auto* validate_cmd = app.add_subcommand("validate", "check the stratification axioms");
    add_algebra(validate_cmd);

    auto* ident_cmd =
        app.add_subcommand("identities", "run the exact zero-residual identity suite");
    add_algebra(ident_cmd);

    auto* frame_cmd =
        app.add_subcommand("frame", "left-invariant frame in exponential coordinates");
    add_algebra(frame_cmd);
    auto* radial_cmd = app.add_subcommand("radial", "radial vector field in both forms");
    add_algebra(radial_cmd);

    auto* gauge_group = app.add_subcommand("gauge", "gauge-norm tools");
    auto* gscan = gauge_group->add_subcommand("scan", "shell-sampled symbol-order scan");
    auto* gscan_alias = app.add_subcommand("gauge-scan", "alias of `gauge scan`");
    for (auto* cmd : {gscan, gscan_alias}) {
        cmd->add_option("--algebra", algebra_name, "algebra preset or JSON file");
        cmd->add_option("--family", family_name, "family name or JSON file");
        cmd->add_option("--function", function_text, "rho (default) or a coordinate like x3");
        cmd->add_option("--target-order", target_order, "symbol order to test");
        cmd->add_option("--max-derivs", max_derivs, "maximum derivative word length");
        cmd->add_option("--seed", seed, "sampling seed")->required();
        cmd->add_option("--shells", shells_k, "deepest dyadic shell 2^-K");
        cmd->add_option("--samples", samples, "points per shell");
        cmd->add_option("--curve", curve_text, "monomial curve c:p,... to sample along");
        cmd->add_option("--csv", csv_path, "write per-shell sups as CSV");
        cmd->add_option("--expect", expect, "bounded|unbounded: expected verdict");
    }

    auto* ball_cmd = app.add_subcommand("ball-volume", "Monte-Carlo gauge-ball volumes");
    add_algebra(ball_cmd);
    ball_cmd->add_option("--radius", radii, "ball radii (repeatable)")->required();
    ball_cmd->add_option("--samples", mc_samples, "Monte-Carlo samples per radius");
    ball_cmd->add_option("--seed", seed, "sampling seed")->required();

    auto* hardy_group = app.add_subcommand("hardy", "weighted-inequality numerics");
    auto* hcheck = hardy_group->add_subcommand("check", "weighted mass vs Sobolev norms");
    auto* hcheck_alias = app.add_subcommand("hardy-check", "alias of `hardy check`");
    for (auto* cmd : {hcheck, hcheck_alias}) {
        cmd->add_option("--algebra", algebra_name)->required();
        cmd->add_option("--s", s_order, "weight exponent (integer, 0 <= s < Q/2)");
        cmd->add_option("--function", function_text,
                        "mini-language: POLY * exp-gauge | POLY * bump(r0,r1)");
        cmd->add_option("--points", points, "Gauss-Legendre points per axis");
    }
    auto* hibp = hardy_group->add_subcommand(
        "ibp", "integration-by-parts identity residual (annular function)");
    auto* hibp_alias = app.add_subcommand("hardy-ibp", "alias of `hardy ibp`");
    for (auto* cmd : {hibp, hibp_alias}) {
        cmd->add_option("--algebra", algebra_name)->required();
        cmd->add_option("--s", s_order, "weight exponent (integer >= 1)");
        cmd->add_option("--annulus", annulus_r0, "inner radius");
        cmd->add_option("--annulus-outer", annulus_r1, "outer radius");
        cmd->add_option("--poly", poly_text, "polynomial factor of the test function");
        cmd->add_option("--bump", bump_name, "bump profile: poly<p> or smooth");
        cmd->add_option("--points", points, "Gauss-Legendre points per axis");
        cmd->add_option("--tolerance", tolerance, "pass threshold for the residual");
        cmd->add_option("--seed", seed, "accepted for scripting; Gauss-Legendre is deterministic");
    }
    auto* hscale = hardy_group->add_subcommand("scaling", "dilation covariance table");
    auto* hscale_alias = app.add_subcommand("hardy-scaling", "alias of `hardy scaling`");
    for (auto* cmd : {hscale, hscale_alias}) {
        cmd->add_option("--algebra", algebra_name)->required();
        cmd->add_option("--s", s_order, "weight exponent");
        cmd->add_option("--r", rational_r, "dilation ratio as a rational, e.g. 1/2");
        cmd->add_option("--function", function_text, "mini-language test function");
        cmd->add_option("--points", points, "Gauss-Legendre points per axis");
        cmd->add_option("--tolerance", tolerance, "pass threshold for the table");
    }

    auto* hypo_group = app.add_subcommand("hypo", "general vector-field families");
    auto* hflag = hypo_group->add_subcommand("flag", "bracket flag and regularity probe");
    auto* hflag_alias = app.add_subcommand("hypo-flag", "alias of `hypo flag`");
    for (auto* cmd : {hflag, hflag_alias}) {
        add_family(cmd);
        cmd->add_option("--depth", depth, "maximum bracket depth");
        cmd->add_option("--probe-points", probe_points, "regularity probe sample count");
        cmd->add_option("--seed", seed, "probe seed")->required();
    }
    auto* hrepair =
        hypo_group->add_subcommand("repair", "well-adaptedness check and quadratic repair");
    auto* hrepair_alias = app.add_subcommand("hypo-repair", "alias of `hypo repair`");
    for (auto* cmd : {hrepair, hrepair_alias}) add_family(cmd);
    auto* hscan = hypo_group->add_subcommand("scan", "gauge symbol scan along the family");
    auto* hscan_alias = app.add_subcommand("hypo-scan", "alias of `hypo scan`");
    for (auto* cmd : {hscan, hscan_alias}) {
        add_family(cmd);
        cmd->add_option("--target-order", target_order, "symbol order to test");
        cmd->add_option("--max-derivs", max_derivs, "maximum derivative word length");
        cmd->add_option("--seed", seed, "sampling seed")->required();
        cmd->add_option("--shells", shells_k, "deepest dyadic shell 2^-K");
        cmd->add_option("--samples", samples, "points per shell");
        cmd->add_option("--curve", curve_text, "monomial curve c:p,...");
        cmd->add_flag("--repaired", repaired, "apply the quadratic repair first");
        cmd->add_option("--csv", csv_path, "write per-shell sups as CSV");
        cmd->add_option("--expect", expect, "bounded|unbounded: expected verdict");
    }
    auto* hradial =
        hypo_group->add_subcommand("radial", "general radial field and quality report");
    auto* hradial_alias = app.add_subcommand("hypo-radial", "alias of `hypo radial`");
    for (auto* cmd : {hradial, hradial_alias}) {
        add_family(cmd);
        cmd->add_option("--seed", seed, "shell-sampling seed")->required();
        cmd->add_option("--samples", samples, "points per shell");
        cmd->add_option("--expect", expect, "bounded|unbounded: expected overall verdict");
    }

    CLI11_PARSE(app, argc, argv);
    set_thread_cap(threads);

    try {
        if (validate_cmd->parsed()) {
            ValidationReport report;
            if (auto preset = algebra_preset(algebra_name)) report = preset->validate();
            else
                report = StratifiedAlgebra::validate_def(
                    algebra_from_json(read_json_file(algebra_name)));
            out.emit(validation_to_json(report));
            std::cerr << (report.ok() ? "valid" : "INVALID") << "\n";
            return report.ok() ? 0 : 1;
        }

        if (ident_cmd->parsed()) {
            const auto a = load_algebra(algebra_name);
            const auto checks = run_identities(a);
            Json j;
            j["algebra"] = a.name().empty() ? algebra_name : a.name();
            j["homogeneous_dimension"] = a.homogeneous_dimension();
            Json arr = Json::array();
            bool all = true;
            for (const auto& c : checks) {
                arr.push_back(
                    Json{{"name", c.name}, {"pass", c.pass}, {"residual", c.residual}});
                all = all && c.pass;
                std::cerr << (c.pass ? "  ok  " : " FAIL ") << c.name << "\n";
            }
            j["checks"] = std::move(arr);
            j["pass"] = all;
            out.emit(j);
            return all ? 0 : 1;
        }

        if (frame_cmd->parsed() || radial_cmd->parsed()) {
            const auto a = load_algebra(algebra_name);
            const auto frame = left_invariant_fields(a);
            Json j;
            j["algebra"] = a.name().empty() ? algebra_name : a.name();
            j["weights"] = a.weights();
            if (frame_cmd->parsed()) {
                Json zeta = Json::array();
                for (int l = 0; l < a.dim(); ++l) {
                    Json row = Json::array();
                    for (int lp = 0; lp < a.dim(); ++lp)
                        row.push_back(frame.zeta[l][lp].to_string());
                    zeta.push_back(std::move(row));
                }
                j["zeta"] = std::move(zeta);
                Json fields = Json::array();
                for (const auto& f : frame.fields) fields.push_back(polys_to_text(f.coeff));
                j["fields"] = std::move(fields);
            } else {
                const auto rad = radial_field(a, frame);
                j["sigma"] = polys_to_text(rad.sigma);
                j["coordinate_form"] = polys_to_text(rad.coordinate_form.coeff);
                j["divergence"] = rad.coordinate_form.divergence().to_string();
            }
            out.emit(j);
            return 0;
        }

        if (gscan->parsed() || gscan_alias->parsed()) {
            GaugePtr gauge;
            std::vector<PolyVectorField> fields;
            if (!algebra_name.empty()) {
                const auto a = load_algebra(algebra_name);
                gauge = make_gauge(a);
                fields = left_invariant_fields(a).horizontal();
            } else if (!family_name.empty()) {
                const auto fam = load_family(family_name);
                const auto flag = bracket_flag(fam, 4, 16, seed);
                if (!flag.hoermander || flag.coordinate_weights.empty())
                    throw std::invalid_argument("family flag does not determine weights");
                gauge = make_gauge(flag.coordinate_weights);
                fields = fam.fields;
            } else {
                throw std::invalid_argument("gauge scan needs --algebra or --family");
            }
            GaugeExpr target;
            ScanNormalization norm = ScanNormalization::ClassBound;
            if (function_text == "rho") {
                target = GaugeExpr::rho(gauge);
                norm = ScanNormalization::GaugeBound;
            } else {
                target = GaugeExpr::from_polynomial(
                    gauge, parse_polynomial(function_text, gauge->dim()));
            }
            ShellSpec shell_spec;
            shell_spec.k_max = shells_k;
            shell_spec.samples_per_shell = samples;
            shell_spec.seed = seed;
            SamplerSpec sampler = SamplerSpec::random_shell();
            if (!curve_text.empty())
                sampler = SamplerSpec::along_curve(parse_curve(curve_text, gauge->dim()));
            const GaugeExprScanFunction fn(target, fields, max_derivs);
            const auto report =
                symbol_scan(fn, *gauge, target_order, max_derivs, shell_spec, sampler, norm);
            if (!csv_path.empty()) {
                std::ofstream csv(csv_path);
                csv << symbol_report_to_csv(report);
            }
            out.emit(symbol_report_to_json(report));
            std::cerr << "verdict: " << to_string(report.verdict) << "\n";
            return verdict_exit(report.verdict, expect);
        }

        if (ball_cmd->parsed()) {
            const auto a = load_algebra(algebra_name);
            const Gauge gauge(a.weights());
            Json arr = Json::array();
            std::vector<BallVolumeEstimate> estimates;
            for (size_t i = 0; i < radii.size(); ++i) {
                const auto est = ball_volume_mc(gauge, radii[i], mc_samples, seed + i);
                estimates.push_back(est);
                arr.push_back(ball_volume_to_json(est));
            }
            Json j;
            j["homogeneous_dimension"] = a.homogeneous_dimension();
            j["estimates"] = std::move(arr);
            Json ratios = Json::array();
            for (size_t i = 1; i < estimates.size(); ++i) {
                const double scale = estimates[i].radius / estimates[i - 1].radius;
                ratios.push_back(
                    Json{{"observed", estimates[i].volume / estimates[i - 1].volume},
                         {"expected", std::pow(scale, a.homogeneous_dimension())}});
            }
            j["consecutive_ratios"] = std::move(ratios);
            out.emit(j);
            return 0;
        }

        if (hcheck->parsed() || hcheck_alias->parsed()) {
            const auto a = load_algebra(algebra_name);
            const auto frame = left_invariant_fields(a);
            auto gauge = make_gauge(a);
            const auto f = parse_test_function(function_text, gauge);
            const auto spec = default_quadrature(f, points);
            const auto report = hardy_report(f, frame, s_order, spec);
            out.emit(hardy_report_to_json(report));
            std::cerr << "lhs=" << report.lhs << " ratio_hom=" << report.ratio_homogeneous
                      << "\n";
            return 0;
        }

        if (hibp->parsed() || hibp_alias->parsed()) {
            const auto a = load_algebra(algebra_name);
            const auto frame = left_invariant_fields(a);
            const auto rad = radial_field(a, frame);
            auto gauge = make_gauge(a);
            BumpPtr profile;
            if (bump_name == "smooth") {
                profile = std::make_shared<BumpProfile>(BumpProfile::smooth());
            } else if (bump_name.rfind("poly", 0) == 0) {
                profile = std::make_shared<BumpProfile>(
                    BumpProfile::polynomial(std::stoi(bump_name.substr(4))));
            } else {
                throw std::invalid_argument("unknown bump profile: " + bump_name);
            }
            const auto phi = TestFunction::annular_bump(
                gauge, parse_polynomial(poly_text, a.dim()), parse_rational(annulus_r0),
                parse_rational(annulus_r1), profile);
            const auto spec = default_quadrature(phi, points);
            const auto check = ibp_residual(phi, frame, rad, s_order, spec);
            Json j = ibp_to_json(check);
            j["tolerance"] = tolerance;
            j["pass"] = check.relative_residual < tolerance;
            out.emit(j);
            std::cerr << "relative residual = " << check.relative_residual << "\n";
            return check.relative_residual < tolerance ? 0 : 1;
        }

        if (hscale->parsed() || hscale_alias->parsed()) {
            const auto a = load_algebra(algebra_name);
            const auto frame = left_invariant_fields(a);
            auto gauge = make_gauge(a);
            const auto f = parse_test_function(function_text, gauge);
            const auto check =
                homogeneity_check(f, frame, s_order, parse_rational(rational_r), points);
            Json j = scaling_to_json(check);
            j["tolerance"] = tolerance;
            j["pass"] = check.max_relative_error < tolerance;
            out.emit(j);
            std::cerr << "max relative error = " << check.max_relative_error << "\n";
            return check.max_relative_error < tolerance ? 0 : 1;
        }

        if (hflag->parsed() || hflag_alias->parsed()) {
            const auto fam = load_family(family_name);
            const auto flag = bracket_flag(fam, depth, probe_points, seed);
            out.emit(flag_report_to_json(flag));
            std::cerr << "dims:";
            for (int d : flag.dims) std::cerr << " " << d;
            std::cerr << (flag.regular ? " (regular)" : " (irregular)") << "\n";
            return flag.hoermander && flag.regular ? 0 : 1;
        }

        if (hrepair->parsed() || hrepair_alias->parsed()) {
            const auto fam = load_family(family_name);
            const auto flag = bracket_flag(fam, 4, 16, 1);
            const auto z = zeta_table(fam, flag);
            const auto before = well_adapted_check(z);
            Json j;
            j["well_adapted_before"] = well_adapted_to_json(before);
            const auto rep = step3_repair(fam, z);
            j["repair"] = step3_repair_to_json(rep);
            const auto z2 = zeta_table(rep.repaired, bracket_flag(rep.repaired, 4, 16, 1));
            j["well_adapted_after"] = well_adapted_to_json(well_adapted_check(z2));
            out.emit(j);
            std::cerr << (before.well_adapted ? "already well-adapted"
                                              : "repaired with a quadratic change")
                      << "\n";
            return 0;
        }

        if (hscan->parsed() || hscan_alias->parsed()) {
            auto fam = load_family(family_name);
            auto flag = bracket_flag(fam, 4, 16, seed);
            if (repaired) {
                const auto z = zeta_table(fam, flag);
                fam = step3_repair(fam, z).repaired;
                flag = bracket_flag(fam, 4, 16, seed);
            }
            if (!flag.hoermander || flag.coordinate_weights.empty())
                throw std::invalid_argument("family flag does not determine weights");
            auto gauge = make_gauge(flag.coordinate_weights);
            ShellSpec shell_spec;
            shell_spec.k_max = shells_k;
            shell_spec.samples_per_shell = samples;
            shell_spec.seed = seed;
            SamplerSpec sampler = SamplerSpec::random_shell();
            if (!curve_text.empty())
                sampler = SamplerSpec::along_curve(parse_curve(curve_text, gauge->dim()));
            const GaugeExprScanFunction fn(GaugeExpr::rho(gauge), fam.fields, max_derivs);
            const auto report = symbol_scan(fn, *gauge, target_order, max_derivs,
                                            shell_spec, sampler,
                                            ScanNormalization::GaugeBound);
            if (!csv_path.empty()) {
                std::ofstream csv(csv_path);
                csv << symbol_report_to_csv(report);
            }
            out.emit(symbol_report_to_json(report));
            std::cerr << "verdict: " << to_string(report.verdict) << "\n";
            return verdict_exit(report.verdict, expect);
        }

        if (hradial->parsed() || hradial_alias->parsed()) {
            const auto fam = load_family(family_name);
            const auto flag = bracket_flag(fam, 4, 16, seed);
            const auto z = zeta_table(fam, flag);
            const auto gen = general_radial(z);
            ShellSpec shell_spec;
            shell_spec.samples_per_shell = samples;
            shell_spec.seed = seed;
            const auto quality = radial_quality_checks(z, gen, shell_spec);
            Json j;
            j["sigma"] = polys_to_text(gen.sigma);
            j["sigma_tilde"] = polys_to_text(gen.sigma_tilde);
            j["exact"] = gen.exact;
            j["quality"] = radial_quality_to_json(quality);
            out.emit(j);
            std::cerr << "overall: " << to_string(quality.overall) << "\n";
            return verdict_exit(quality.overall, expect);
        }

        std::cerr << "no subcommand matched\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
