#include <carnot/io.hpp>

#include <fstream>
#include <sstream>

namespace carnot {

Json polynomial_to_json(const Polynomial& p)
{
    Json terms = Json::array();
    for (const auto& [e, c] : p.terms()) terms.push_back(Json::array({rational_to_string(c), e}));
    return terms;
}

Polynomial polynomial_from_json(const Json& j, int nvars)
{
    Polynomial p(nvars);
    for (const auto& term : j) {
        if (!term.is_array() || term.size() != 2)
            throw std::invalid_argument("polynomial term must be [coeff, exponents]");
        const Rational c = parse_rational(term[0].get<std::string>());
        auto e = term[1].get<std::vector<int>>();
        if (static_cast<int>(e.size()) != nvars)
            throw std::invalid_argument("exponent tuple has wrong length");
        p.add_term(std::move(e), c);
    }
    return p;
}

Json algebra_to_json(const AlgebraDef& def)
{
    Json j;
    if (!def.name.empty()) j["name"] = def.name;
    j["layer_dims"] = def.layer_dims;
    Json brackets = Json::array();
    for (const auto& [ij, out] : def.brackets) {
        Json entry;
        entry["i"] = ij.first + 1;
        entry["j"] = ij.second + 1;
        Json outj = Json::object();
        for (const auto& [k, c] : out) outj[std::to_string(k + 1)] = rational_to_string(c);
        entry["out"] = std::move(outj);
        brackets.push_back(std::move(entry));
    }
    j["brackets"] = std::move(brackets);
    if (!def.witnesses.empty()) {
        Json w = Json::object();
        for (const auto& [l, word] : def.witnesses) {
            Json arr = Json::array();
            for (int a : word) arr.push_back(a + 1);
            w[std::to_string(l + 1)] = std::move(arr);
        }
        j["witnesses"] = std::move(w);
    }
    return j;
}

AlgebraDef algebra_from_json(const Json& j)
{
    AlgebraDef def;
    if (j.contains("name")) def.name = j["name"].get<std::string>();
    if (!j.contains("layer_dims"))
        throw std::invalid_argument("algebra definition needs layer_dims");
    def.layer_dims = j["layer_dims"].get<std::vector<int>>();
    if (j.contains("brackets")) {
        for (const auto& entry : j["brackets"]) {
            int i = entry.at("i").get<int>() - 1;
            int jj = entry.at("j").get<int>() - 1;
            SparseVec out;
            for (const auto& [k, v] : entry.at("out").items())
                out[std::stoi(k) - 1] = parse_rational(v.get<std::string>());
            bool flip = i > jj;
            if (flip) std::swap(i, jj);
            if (i == jj && !out.empty())
                throw std::invalid_argument("bracket [i,i] must vanish");
            auto& slot = def.brackets[{i, jj}];
            for (auto& [k, c] : out) {
                const Rational add = flip ? -c : c;
                slot[k] += add;
                if (slot[k] == 0) slot.erase(k);
            }
            if (slot.empty()) def.brackets.erase({i, jj});
        }
    }
    if (j.contains("witnesses")) {
        for (const auto& [l, word] : j["witnesses"].items()) {
            std::vector<int> w;
            for (const auto& a : word) w.push_back(a.get<int>() - 1);
            def.witnesses[std::stoi(l) - 1] = std::move(w);
        }
    }
    return def;
}

Json family_to_json(const FieldFamily& f)
{
    Json j;
    if (!f.name.empty()) j["name"] = f.name;
    j["dim"] = f.dim;
    Json fields = Json::array();
    for (const auto& field : f.fields) {
        Json coeffs = Json::array();
        for (const auto& p : field.coeff) coeffs.push_back(polynomial_to_json(p));
        fields.push_back(std::move(coeffs));
    }
    j["fields"] = std::move(fields);
    Json base = Json::array();
    for (const auto& b : f.base_point) base.push_back(rational_to_string(b));
    j["base_point"] = std::move(base);
    if (f.coordinate_weights) j["weights"] = *f.coordinate_weights;
    return j;
}

FieldFamily family_from_json(const Json& j)
{
    FieldFamily f;
    f.dim = j.at("dim").get<int>();
    if (j.contains("name")) f.name = j["name"].get<std::string>();
    for (const auto& field : j.at("fields")) {
        PolyVectorField v(f.dim);
        if (static_cast<int>(field.size()) != f.dim)
            throw std::invalid_argument("field must list one polynomial per coordinate");
        for (int c = 0; c < f.dim; ++c) v.coeff[c] = polynomial_from_json(field[c], f.dim);
        f.fields.push_back(std::move(v));
    }
    if (j.contains("base_point")) {
        for (const auto& b : j["base_point"])
            f.base_point.push_back(b.is_string() ? parse_rational(b.get<std::string>())
                                                 : Rational(b.get<long>()));
    }
    if (f.base_point.empty()) f.base_point.assign(f.dim, Rational(0));
    if (static_cast<int>(f.base_point.size()) != f.dim)
        throw std::invalid_argument("base point has wrong dimension");
    if (j.contains("weights")) f.coordinate_weights = j["weights"].get<std::vector<int>>();
    return f;
}

Json quadrature_to_json(const QuadratureSpec& spec)
{
    Json j;
    j["method"] = spec.method == QuadratureMethod::GaussLegendre ? "gauss" : "mc";
    j["points_per_axis"] = spec.points_per_axis;
    j["box_halfwidths"] = spec.box_halfwidths;
    j["axis_powers"] = spec.axis_powers;
    j["mc_samples"] = spec.mc_samples;
    j["seed"] = spec.seed;
    return j;
}

QuadratureSpec quadrature_from_json(const Json& j)
{
    QuadratureSpec spec;
    for (const auto& [key, value] : j.items()) {
        if (key == "method") {
            const auto m = value.get<std::string>();
            if (m == "gauss") spec.method = QuadratureMethod::GaussLegendre;
            else if (m == "mc") spec.method = QuadratureMethod::MonteCarlo;
            else throw std::invalid_argument("unknown quadrature method: " + m);
        } else if (key == "points_per_axis") spec.points_per_axis = value.get<int>();
        else if (key == "box_halfwidths") spec.box_halfwidths = value.get<std::vector<double>>();
        else if (key == "axis_powers") spec.axis_powers = value.get<std::vector<int>>();
        else if (key == "mc_samples") spec.mc_samples = value.get<long>();
        else if (key == "seed") spec.seed = value.get<uint64_t>();
        else throw std::invalid_argument("unknown quadrature key: " + key);
    }
    return spec;
}

namespace {

Json issue_to_json(const ValidationIssue& i)
{
    Json j;
    j["axiom"] = i.axiom;
    Json idx = Json::array();
    for (int k : i.indices) idx.push_back(k + 1);
    j["indices"] = std::move(idx);
    j["detail"] = i.detail;
    return j;
}

} // namespace

Json validation_to_json(const ValidationReport& r)
{
    Json j;
    j["valid"] = r.ok();
    Json s = Json::array(), v = Json::array();
    for (const auto& i : r.structural) s.push_back(issue_to_json(i));
    for (const auto& i : r.violations) v.push_back(issue_to_json(i));
    j["structural_errors"] = std::move(s);
    j["axiom_violations"] = std::move(v);
    return j;
}

namespace {

Json word_to_json(const std::vector<int>& word)
{
    Json arr = Json::array();
    for (int l : word) arr.push_back(l + 1);
    return arr;
}

} // namespace

Json symbol_report_to_json(const SymbolReport& r)
{
    Json j;
    j["target_order"] = r.target_order;
    j["max_word_length"] = r.max_word_length;
    j["verdict"] = to_string(r.verdict);
    j["skipped_points"] = r.skipped_points;
    Json words = Json::array();
    for (const auto& w : r.words) {
        Json wj;
        wj["word"] = word_to_json(w.word);
        wj["normalization_exponent"] = w.normalization_exponent;
        wj["shell_radii"] = w.shell_radii;
        wj["shell_sups"] = w.shell_sups;
        wj["slope"] = w.slope;
        wj["verdict"] = to_string(w.verdict);
        words.push_back(std::move(wj));
    }
    j["words"] = std::move(words);
    return j;
}

std::string symbol_report_to_csv(const SymbolReport& r)
{
    std::ostringstream out;
    out << "shell_radius,gamma,sup_value\n";
    for (const auto& w : r.words) {
        std::string gamma;
        for (size_t i = 0; i < w.word.size(); ++i)
            gamma += (i ? "." : "") + std::to_string(w.word[i] + 1);
        if (gamma.empty()) gamma = "-";
        for (size_t k = 0; k < w.shell_radii.size(); ++k) {
            char buf[64];
            std::snprintf(buf, sizeof(buf), "%.17g,%s,%.17g", w.shell_radii[k],
                          gamma.c_str(), w.shell_sups[k]);
            out << buf << "\n";
        }
    }
    return out.str();
}

Json ball_volume_to_json(const BallVolumeEstimate& e)
{
    Json j;
    j["radius"] = e.radius;
    j["volume"] = e.volume;
    j["std_error"] = e.std_error;
    j["samples"] = e.samples;
    return j;
}

Json hardy_report_to_json(const HardyReport& r)
{
    Json j;
    j["s"] = r.s;
    j["lhs"] = r.lhs;
    j["lhs_error"] = r.lhs_error;
    j["rhs_full"] = r.rhs_full;
    j["rhs_homogeneous"] = r.rhs_homogeneous;
    j["ratio_full"] = r.ratio_full;
    j["ratio_homogeneous"] = r.ratio_homogeneous;
    return j;
}

Json ibp_to_json(const IbpCheck& c)
{
    Json j;
    j["lhs"] = c.lhs;
    j["rhs"] = c.rhs;
    j["relative_residual"] = c.relative_residual;
    return j;
}

Json scaling_to_json(const ScalingCheck& c)
{
    Json j;
    j["r"] = rational_to_string(c.r);
    Json rows = Json::array();
    for (const auto& row : c.rows) {
        Json rj;
        rj["quantity"] = row.quantity;
        rj["observed"] = row.observed;
        rj["expected"] = row.expected;
        rj["relative_error"] = row.relative_error;
        rows.push_back(std::move(rj));
    }
    j["rows"] = std::move(rows);
    j["max_relative_error"] = c.max_relative_error;
    return j;
}

Json flag_report_to_json(const FlagReport& r)
{
    Json j;
    j["dims"] = r.dims;
    j["hoermander"] = r.hoermander;
    if (r.step) j["step"] = *r.step;
    j["regular"] = r.regular;
    j["probe_points"] = r.probe_points;
    Json basis = Json::array();
    for (size_t b = 0; b < r.adapted_basis.size(); ++b) {
        Json bj;
        bj["word"] = word_to_json(r.adapted_basis[b].letters);
        bj["layer"] = r.basis_layer[b];
        basis.push_back(std::move(bj));
    }
    j["adapted_basis"] = std::move(basis);
    if (!r.coordinate_weights.empty()) j["coordinate_weights"] = r.coordinate_weights;
    return j;
}

Json well_adapted_to_json(const WellAdaptedReport& r)
{
    Json j;
    j["well_adapted"] = r.well_adapted;
    Json v = Json::array();
    for (const auto& viol : r.violations) {
        Json vj;
        vj["field_coordinate"] = viol.field_coord + 1;
        vj["target_coordinate"] = viol.target_coord + 1;
        vj["alpha"] = viol.alpha;
        vj["value"] = rational_to_string(viol.value);
        v.push_back(std::move(vj));
    }
    j["violations"] = std::move(v);
    return j;
}

Json step3_repair_to_json(const Step3Repair& r)
{
    Json j;
    j["identity"] = r.identity;
    j["symmetry_ok"] = r.symmetry_ok;
    Json fwd = Json::array();
    for (const auto& p : r.forward) fwd.push_back(p.to_string());
    j["forward"] = std::move(fwd);
    Json inv = Json::array();
    for (const auto& p : r.inverse) inv.push_back(p.to_string());
    j["inverse"] = std::move(inv);
    return j;
}

Json radial_quality_to_json(const RadialQualityReport& r)
{
    Json j;
    j["div_exact"] = r.div_exact;
    j["lambda_exact"] = r.lambda_exact;
    j["div_verdict"] = to_string(r.div_verdict);
    j["lambda_verdict"] = to_string(r.lambda_verdict);
    j["r_lambda_verdict"] = to_string(r.r_lambda_verdict);
    Json so = Json::array();
    for (const auto& [c, v] : r.sigma_orders)
        so.push_back(Json{{"coordinate", c + 1}, {"verdict", to_string(v)}});
    j["sigma_orders"] = std::move(so);
    Json st = Json::array();
    for (const auto& [c, v] : r.sigma_tilde_orders)
        st.push_back(Json{{"coordinate", c + 1}, {"verdict", to_string(v)}});
    j["sigma_tilde_orders"] = std::move(st);
    j["overall"] = to_string(r.overall);
    return j;
}

Json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open file: " + path);
    Json j;
    in >> j;
    return j;
}

void write_json_file(const std::string& path, const Json& j)
{
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot open file for writing: " + path);
    out << j.dump(2) << "\n";
}

StratifiedAlgebra load_algebra(const std::string& name_or_path)
{
    if (auto preset = algebra_preset(name_or_path)) return *preset;
    const auto def = algebra_from_json(read_json_file(name_or_path));
    const auto report = StratifiedAlgebra::validate_def(def);
    if (!report.ok()) {
        std::string msg = "algebra definition fails validation:";
        for (const auto& i : report.structural) msg += "\n  [structural] " + i.detail;
        for (const auto& i : report.violations) msg += "\n  [" + i.axiom + "] " + i.detail;
        throw std::invalid_argument(msg);
    }
    auto a = StratifiedAlgebra::create(def);
    return a;
}

FieldFamily load_family(const std::string& name_or_path)
{
    if (name_or_path == "counterexample") return counterexample_family();
    if (auto preset = algebra_preset(name_or_path))
        return family_from_frame(left_invariant_fields(*preset));
    return family_from_json(read_json_file(name_or_path));
}

} // namespace carnot
