#pragma once

#include <carnot/algebra.hpp>
#include <carnot/hardy.hpp>
#include <carnot/hypo.hpp>
#include <carnot/quadrature.hpp>
#include <carnot/scan.hpp>

#include <json.hpp>

#include <string>

namespace carnot {

using Json = nlohmann::ordered_json;

// Definitions (1-based indices and "p/q" rationals on the wire).
Json algebra_to_json(const AlgebraDef& def);
AlgebraDef algebra_from_json(const Json& j);

Json family_to_json(const FieldFamily& f);
FieldFamily family_from_json(const Json& j);

Json quadrature_to_json(const QuadratureSpec& spec);
QuadratureSpec quadrature_from_json(const Json& j);

Json polynomial_to_json(const Polynomial& p);
Polynomial polynomial_from_json(const Json& j, int nvars);

// Reports.
Json validation_to_json(const ValidationReport& r);
Json symbol_report_to_json(const SymbolReport& r);
std::string symbol_report_to_csv(const SymbolReport& r);
Json ball_volume_to_json(const BallVolumeEstimate& e);
Json hardy_report_to_json(const HardyReport& r);
Json ibp_to_json(const IbpCheck& c);
Json scaling_to_json(const ScalingCheck& c);
Json flag_report_to_json(const FlagReport& r);
Json well_adapted_to_json(const WellAdaptedReport& r);
Json step3_repair_to_json(const Step3Repair& r);
Json radial_quality_to_json(const RadialQualityReport& r);

// File helpers.
Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

/// Load an algebra by preset name or JSON file path; validates on read and
/// throws std::invalid_argument with the failure list on a bad definition.
StratifiedAlgebra load_algebra(const std::string& name_or_path);

/// Load a family: "counterexample", a preset algebra name (its horizontal
/// frame), or a JSON file path.
FieldFamily load_family(const std::string& name_or_path);

} // namespace carnot
