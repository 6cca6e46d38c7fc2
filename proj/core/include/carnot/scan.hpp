#pragma once

#include <carnot/gauge.hpp>
#include <carnot/polynomial.hpp>
#include <carnot/vector_field.hpp>

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <vector>

namespace carnot {

/// Dyadic shells r = 2^{-k}, k = k_min..k_max, sampled by dilating one
/// fixed quasi-uniform draw on the unit shell; only the radial behaviour
/// varies across shells.
struct ShellSpec {
    int k_min = 0;
    int k_max = 10;
    int samples_per_shell = 256;
    uint64_t seed = 1;
};

/// Monomial curve x_l(t) = coeff_l * t^{power_l}, t > 0. Used to probe
/// directions where random shell sampling would miss a blow-up.
struct CurveSpec {
    std::vector<double> coeff;
    std::vector<int> power;
};

struct SamplerSpec {
    enum class Kind { RandomShell, Curve };
    Kind kind = Kind::RandomShell;
    CurveSpec curve;

    static SamplerSpec random_shell() { return {}; }
    static SamplerSpec along_curve(CurveSpec c)
    {
        SamplerSpec s;
        s.kind = Kind::Curve;
        s.curve = std::move(c);
        return s;
    }
};

enum class ScanVerdict { Bounded, Unbounded, Inconclusive };

std::string to_string(ScanVerdict v);

/// Normalization of the shell sups:
///  - ClassBound: sup |D_word f| / r^{(alpha-|word|)_+}, the symbol-class
///    membership test (derivatives beyond order alpha must stay bounded);
///  - GaugeBound: sup |D_word f| / r^{alpha-|word|} without the clamp, the
///    gauge-type estimate |D^gamma rho| <= C rho^{1-|gamma|}. The gauge is
///    only a symbol with one derivative; its higher derivatives grow like
///    rho^{1-|gamma|}, which is exactly what this mode certifies.
enum class ScanNormalization { ClassBound, GaugeBound };

struct WordScan {
    std::vector<int> word; // indices into the horizontal frame, outermost first
    double normalization_exponent = 0.0;
    std::vector<double> shell_radii;
    std::vector<double> shell_sups; // sup |D_word f| / r^{normalization_exponent}
    double slope = 0.0;             // log2 fit over the tail half of the shells
    ScanVerdict verdict = ScanVerdict::Inconclusive;
};

struct ScanThresholds {
    double bounded_ratio = 10.0;  // max/min shell sup for a "bounded" verdict
    double unbounded_slope = -0.5;
};

struct SymbolReport {
    double target_order = 0.0;
    int max_word_length = 0;
    std::vector<WordScan> words;
    ScanVerdict verdict = ScanVerdict::Inconclusive;
    long skipped_points = 0;

    const WordScan* find(const std::vector<int>& word) const;
};

/// Evaluator of a function together with its iterated frame derivatives.
class ScanFunction {
public:
    virtual ~ScanFunction() = default;
    virtual int max_order() const = 0;
    virtual int field_count() const = 0;
    /// D_{word[0]} ... D_{word[k-1]} f at x; NaN marks an evaluation failure
    /// (the point is skipped and counted).
    virtual double eval_word(std::span<const int> word, std::span<const double> x) const = 0;
};

/// Symbolic derivatives of a gauge expression along a fixed list of frame
/// fields; the whole derivative table is precomputed and compiled.
class GaugeExprScanFunction final : public ScanFunction {
public:
    GaugeExprScanFunction(GaugeExpr base, std::vector<PolyVectorField> fields, int max_order);

    int max_order() const override { return max_order_; }
    int field_count() const override { return n_fields_; }
    double eval_word(std::span<const int> word, std::span<const double> x) const override;

    const GaugeExpr& derivative(std::span<const int> word) const;

private:
    struct Compiled {
        std::vector<std::pair<int, CompiledPolynomial>> parts;
    };
    int max_order_;
    int n_fields_ = 0;
    GaugePtr gauge_;
    CompiledPolynomial rho_w_;
    int w_;
    std::map<std::vector<int>, GaugeExpr> symbolic_;
    std::map<std::vector<int>, Compiled> compiled_;
};

/// First-order central finite differences along the fields' flow
/// directions; the numeric fallback and the cross-check for the symbolic
/// route (words of length <= 1).
class FiniteDifferenceScanFunction final : public ScanFunction {
public:
    FiniteDifferenceScanFunction(std::function<double(std::span<const double>)> f,
                                 std::vector<PolyVectorField> fields, double step = 1e-5);
    int max_order() const override { return 1; }
    int field_count() const override { return static_cast<int>(fields_.size()); }
    double eval_word(std::span<const int> word, std::span<const double> x) const override;

private:
    std::function<double(std::span<const double>)> f_;
    std::vector<PolyVectorField> fields_;
    double step_;
};

/// Shell-sampled symbol-order estimate: is f of order `alpha` with
/// derivatives up to n_max along the given horizontal frame?
SymbolReport symbol_scan(const ScanFunction& f, const Gauge& gauge, double alpha, int n_max,
                         const ShellSpec& shells,
                         const SamplerSpec& sampler = SamplerSpec::random_shell(),
                         ScanNormalization normalization = ScanNormalization::ClassBound,
                         const ScanThresholds& thresholds = {});

struct BallVolumeEstimate {
    double radius = 0.0;
    double volume = 0.0;
    double std_error = 0.0;
    long samples = 0;
};

/// Monte-Carlo Lebesgue volume of {rho < radius}.
BallVolumeEstimate ball_volume_mc(const Gauge& gauge, double radius, long samples,
                                  uint64_t seed);

} // namespace carnot
