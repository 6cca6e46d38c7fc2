#include <carnot/algebra.hpp>
#include <carnot/linalg.hpp>

#include <array>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace carnot {

namespace {

std::string idx_str(std::span<const int> idx)
{
    std::ostringstream out;
    out << "(";
    for (size_t i = 0; i < idx.size(); ++i) out << (i ? "," : "") << idx[i] + 1;
    out << ")";
    return out.str();
}

std::vector<ValidationIssue> structural_issues(const AlgebraDef& def)
{
    std::vector<ValidationIssue> bad;
    if (def.layer_dims.empty())
        bad.push_back({"structure", {}, "no layers"});
    for (size_t j = 0; j < def.layer_dims.size(); ++j)
        if (def.layer_dims[j] <= 0)
            bad.push_back({"structure", {static_cast<int>(j)},
                           "layer dimension must be positive"});
    if (!bad.empty()) return bad;

    const int q = std::accumulate(def.layer_dims.begin(), def.layer_dims.end(), 0);
    auto check_index = [&](int l, const char* what) {
        if (l < 0 || l >= q)
            bad.push_back({"structure", {l}, std::string(what) + " index out of range"});
    };
    for (const auto& [ij, out] : def.brackets) {
        check_index(ij.first, "bracket");
        check_index(ij.second, "bracket");
        if (ij.first >= ij.second)
            bad.push_back({"structure", {ij.first, ij.second},
                           "bracket keys must satisfy i < j"});
        for (const auto& [k, c] : out) {
            check_index(k, "bracket output");
            (void)c;
        }
    }
    for (const auto& [l, word] : def.witnesses) {
        check_index(l, "witness");
        for (int a : word) check_index(a, "witness letter");
    }
    return bad;
}

} // namespace

StratifiedAlgebra StratifiedAlgebra::create(AlgebraDef def)
{
    auto bad = structural_issues(def);
    if (!bad.empty())
        throw std::invalid_argument("malformed algebra definition: " + bad.front().detail);

    StratifiedAlgebra a;
    a.def_ = std::move(def);
    a.q_ = std::accumulate(a.def_.layer_dims.begin(), a.def_.layer_dims.end(), 0);
    a.cum_.assign(1, 0);
    for (int d : a.def_.layer_dims) a.cum_.push_back(a.cum_.back() + d);
    a.weights_.resize(a.q_);
    for (size_t j = 0; j < a.def_.layer_dims.size(); ++j)
        for (int l = a.cum_[j]; l < a.cum_[j + 1]; ++l) a.weights_[l] = static_cast<int>(j) + 1;
    for (const auto& [ij, out] : a.def_.brackets)
        for (const auto& [k, c] : out)
            if (c != 0) a.entries_.push_back({ij.first, ij.second, k, c});
    return a;
}

int StratifiedAlgebra::homogeneous_dimension() const
{
    return std::accumulate(weights_.begin(), weights_.end(), 0);
}

SparseVec StratifiedAlgebra::basis_bracket(int i, int j) const
{
    if (i < 0 || j < 0 || i >= q_ || j >= q_)
        throw std::out_of_range("basis index out of range");
    if (i == j) return {};
    const bool flip = i > j;
    if (flip) std::swap(i, j);
    auto it = def_.brackets.find({i, j});
    if (it == def_.brackets.end()) return {};
    SparseVec out = it->second;
    if (flip)
        for (auto& [k, c] : out) c = -c;
    return out;
}

std::vector<Rational> StratifiedAlgebra::bracket(std::span<const Rational> u,
                                                 std::span<const Rational> v) const
{
    if (static_cast<int>(u.size()) != q_ || static_cast<int>(v.size()) != q_)
        throw std::invalid_argument("element dimension mismatch");
    std::vector<Rational> out(q_);
    for (const auto& e : entries_) {
        const Rational f = u[e.i] * v[e.j] - u[e.j] * v[e.i];
        if (f != 0) out[e.k] += e.c * f;
    }
    return out;
}

std::vector<double> StratifiedAlgebra::bracket(std::span<const double> u,
                                               std::span<const double> v) const
{
    if (static_cast<int>(u.size()) != q_ || static_cast<int>(v.size()) != q_)
        throw std::invalid_argument("element dimension mismatch");
    std::vector<double> out(q_, 0.0);
    for (const auto& e : entries_)
        out[e.k] += to_double(e.c) * (u[e.i] * v[e.j] - u[e.j] * v[e.i]);
    return out;
}

std::vector<Rational> StratifiedAlgebra::word_bracket(std::span<const int> word) const
{
    if (word.empty()) throw std::invalid_argument("empty bracket word");
    std::vector<Rational> acc(q_);
    acc.at(word.back()) = 1;
    for (int p = static_cast<int>(word.size()) - 2; p >= 0; --p) {
        std::vector<Rational> left(q_);
        left.at(word[p]) = 1;
        acc = bracket(left, acc);
    }
    return acc;
}

Rational StratifiedAlgebra::kappa(std::span<const int> word, int target) const
{
    if (target < 0 || target >= q_) throw std::out_of_range("kappa target out of range");
    // Grading short-circuit: the coefficient vanishes unless the weights add up.
    long wsum = 0;
    for (int l : word) {
        if (l < 0 || l >= q_) throw std::out_of_range("kappa word index out of range");
        wsum += weights_[l];
    }
    if (wsum != weights_[target]) return Rational(0);
    return word_bracket(word)[target];
}

ValidationReport StratifiedAlgebra::validate_def(const AlgebraDef& def)
{
    ValidationReport report;
    report.structural = structural_issues(def);
    if (!report.structural.empty()) return report;

    const StratifiedAlgebra a = create(def);
    const auto& w = a.weights_;
    const int q = a.q_;
    const int m = a.step();

    // Antisymmetry holds by the i<j storage convention; reject degenerate keys
    // and check grading on every stored coefficient.
    for (const auto& e : a.entries_) {
        if (w[e.k] != w[e.i] + w[e.j]) {
            report.violations.push_back({"grading", {e.i, e.j, e.k},
                                         "c" + idx_str(std::array{e.i, e.j}) + "^" +
                                             std::to_string(e.k + 1) + " nonzero but weight " +
                                             std::to_string(w[e.k]) + " != " +
                                             std::to_string(w[e.i] + w[e.j])});
        }
    }

    // Jacobi: [[i,j],k] + [[j,k],i] + [[k,i],j] = 0 for all triples.
    auto bracket_sparse = [&](const SparseVec& u, int k) {
        SparseVec out;
        for (const auto& [l, c] : u)
            for (const auto& [t, d] : a.basis_bracket(l, k)) {
                out[t] += c * d;
                if (out[t] == 0) out.erase(t);
            }
        return out;
    };
    for (int i = 0; i < q; ++i)
        for (int j = i + 1; j < q; ++j)
            for (int k = j + 1; k < q; ++k) {
                SparseVec total;
                auto add = [&](const SparseVec& s) {
                    for (const auto& [t, c] : s) {
                        total[t] += c;
                        if (total[t] == 0) total.erase(t);
                    }
                };
                add(bracket_sparse(a.basis_bracket(i, j), k));
                add(bracket_sparse(a.basis_bracket(j, k), i));
                add(bracket_sparse(a.basis_bracket(k, i), j));
                if (!total.empty())
                    report.violations.push_back(
                        {"jacobi", {i, j, k}, "cyclic double brackets do not cancel"});
            }

    // Generation: [V_1, V_j] must span V_{j+1}.
    for (int j = 1; j < m; ++j) {
        const auto [lo1, hi1] = a.layer_range(1);
        const auto [loj, hij] = a.layer_range(j);
        const auto [lon, hin] = a.layer_range(j + 1);
        const int next_dim = hin - lon;
        RankAccumulator acc(next_dim);
        for (int i = lo1; i < hi1; ++i)
            for (int l = loj; l < hij; ++l) {
                std::vector<Rational> proj(next_dim);
                for (const auto& [k, c] : a.basis_bracket(i, l))
                    if (k >= lon && k < hin) proj[k - lon] = c;
                acc.insert(std::move(proj));
            }
        if (acc.rank() != next_dim)
            report.violations.push_back(
                {"generation", {j}, "[V_1, V_" + std::to_string(j) + "] does not span V_" +
                                        std::to_string(j + 1)});
    }

    // Witness consistency: stored words must reproduce basis vectors exactly.
    for (const auto& [l, word] : def.witnesses) {
        bool ok = static_cast<int>(word.size()) == w[l];
        if (ok) {
            const auto val = a.word_bracket(word);
            for (int t = 0; t < q && ok; ++t)
                if (val[t] != (t == l ? Rational(1) : Rational(0))) ok = false;
        }
        if (!ok)
            report.violations.push_back({"witness", {l},
                                         "word " + idx_str(word) + " does not evaluate to Y_" +
                                             std::to_string(l + 1)});
    }

    return report;
}

WitnessSearch find_bracket_witnesses(const StratifiedAlgebra& a)
{
    WitnessSearch result;
    const int n1 = a.first_layer_dim();
    for (int l = 0; l < a.dim(); ++l) {
        const int len = a.weight(l);
        if (len == 1) {
            result.found[l] = {l};
            continue;
        }
        // Breadth-first in lexicographic order over first-layer words of the
        // exact length; the first word whose right-nested bracket equals Y_l wins.
        std::vector<int> word(len, 0);
        bool found = false;
        while (true) {
            const auto val = a.word_bracket(word);
            bool match = true;
            for (int t = 0; t < a.dim() && match; ++t)
                if (val[t] != (t == l ? Rational(1) : Rational(0))) match = false;
            if (match) {
                result.found[l] = word;
                found = true;
                break;
            }
            int pos = len - 1;
            while (pos >= 0 && word[pos] == n1 - 1) word[pos--] = 0;
            if (pos < 0) break;
            ++word[pos];
        }
        if (!found) result.missing.push_back(l);
    }
    return result;
}

StratifiedAlgebra heisenberg(int n)
{
    if (n < 1) throw std::invalid_argument("heisenberg(n) requires n >= 1");
    AlgebraDef def;
    def.name = n == 1 ? "heisenberg" : "heisenberg" + std::to_string(n);
    def.layer_dims = {2 * n, 1};
    const int center = 2 * n;
    for (int i = 0; i < n; ++i) def.brackets[{i, n + i}] = {{center, Rational(1)}};
    for (int l = 0; l < 2 * n; ++l) def.witnesses[l] = {l};
    def.witnesses[center] = {0, n};
    return StratifiedAlgebra::create(std::move(def));
}

StratifiedAlgebra engel()
{
    AlgebraDef def;
    def.name = "engel";
    def.layer_dims = {2, 1, 1};
    def.brackets[{0, 1}] = {{2, Rational(1)}};
    def.brackets[{0, 2}] = {{3, Rational(1)}};
    def.witnesses = {{0, {0}}, {1, {1}}, {2, {0, 1}}, {3, {0, 0, 1}}};
    return StratifiedAlgebra::create(std::move(def));
}

StratifiedAlgebra abelian(int n)
{
    if (n < 1) throw std::invalid_argument("abelian(n) requires n >= 1");
    AlgebraDef def;
    def.name = "abelian" + std::to_string(n);
    def.layer_dims = {n};
    for (int l = 0; l < n; ++l) def.witnesses[l] = {l};
    return StratifiedAlgebra::create(std::move(def));
}

std::optional<StratifiedAlgebra> algebra_preset(const std::string& name)
{
    if (name == "heisenberg" || name == "heisenberg1") return heisenberg(1);
    if (name.rfind("heisenberg", 0) == 0) {
        const int n = std::stoi(name.substr(10));
        return heisenberg(n);
    }
    if (name == "engel") return engel();
    if (name.rfind("abelian", 0) == 0) {
        const int n = std::stoi(name.substr(7));
        return abelian(n);
    }
    if (name.rfind("free:", 0) == 0) {
        const auto rest = name.substr(5);
        const auto colon = rest.find(':');
        if (colon == std::string::npos) return std::nullopt;
        return free_nilpotent(std::stoi(rest.substr(0, colon)),
                              std::stoi(rest.substr(colon + 1)));
    }
    return std::nullopt;
}

} // namespace carnot
