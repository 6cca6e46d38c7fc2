#include <carnot/polynomial.hpp>

#include <sstream>

namespace carnot {

std::string Polynomial::to_string(const std::function<std::string(int)>& var_name) const
{
    if (terms_.empty()) return "0";

    auto name = [&](int i) { return var_name ? var_name(i) : "x" + std::to_string(i + 1); };

    std::vector<const TermMap::value_type*> sorted;
    sorted.reserve(terms_.size());
    for (const auto& t : terms_) sorted.push_back(&t);
    std::sort(sorted.begin(), sorted.end(), [](const auto* a, const auto* b) {
        const int da = std::accumulate(a->first.begin(), a->first.end(), 0);
        const int db = std::accumulate(b->first.begin(), b->first.end(), 0);
        if (da != db) return da < db;
        return a->first < b->first;
    });

    std::ostringstream out;
    bool first = true;
    for (const auto* t : sorted) {
        const auto& [e, c] = *t;
        Rational mag = c < 0 ? Rational(-c) : c;
        if (first) {
            if (c < 0) out << "-";
            first = false;
        } else {
            out << (c < 0 ? " - " : " + ");
        }
        const bool has_vars = std::any_of(e.begin(), e.end(), [](int k) { return k > 0; });
        if (mag != 1 || !has_vars) {
            out << rational_to_string(mag);
            if (has_vars) out << "*";
        }
        bool first_var = true;
        for (int i = 0; i < nvars_; ++i) {
            if (e[i] == 0) continue;
            if (!first_var) out << "*";
            first_var = false;
            out << name(i);
            if (e[i] > 1) out << "^" << e[i];
        }
    }
    return out.str();
}

CompiledPolynomial::CompiledPolynomial(const Polynomial& p) : nvars_(p.nvars())
{
    coeffs_.reserve(p.terms().size());
    expos_.reserve(p.terms().size() * nvars_);
    for (const auto& [e, c] : p.terms()) {
        coeffs_.push_back(to_double(c));
        expos_.insert(expos_.end(), e.begin(), e.end());
    }
}

double CompiledPolynomial::operator()(std::span<const double> x) const
{
    double acc = 0;
    const int* e = expos_.data();
    for (double c : coeffs_) {
        double t = c;
        for (int i = 0; i < nvars_; ++i) {
            double xi = x[i];
            int k = e[i];
            while (k >= 4) {
                const double x2 = xi * xi;
                t *= x2 * x2;
                k -= 4;
            }
            for (; k > 0; --k) t *= xi;
        }
        acc += t;
        e += nvars_;
    }
    return acc;
}

} // namespace carnot
