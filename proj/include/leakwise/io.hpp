#pragma once

#include "leakwise/leakage.hpp"
#include "leakwise/mask.hpp"
#include "leakwise/sim.hpp"
#include "leakwise/spectral.hpp"

#include <json.hpp>

#include <span>
#include <string>

namespace leakwise::io {

using nlohmann::json;

/// Shortest round-trip decimal representation of a double.
std::string format_double(double value);

enum class InputKind { Spectrum, Covariance, Fading, Arma };

/// Classifies an input document by its schema. Throws InvalidArgument when
/// it matches none of the known shapes.
InputKind detect_input(const json& doc);

json to_json(const SpectralDensity& s);
SpectralDensity spectral_density_from_json(const json& doc);

json to_json(const CovarianceMatrix& c);
CovarianceMatrix covariance_from_json(const json& doc);

json to_json(const FadingModel& f);
FadingModel fading_from_json(const json& doc);

json to_json(const ArmaModel& m);
ArmaModel arma_from_json(const json& doc);

// CSV bodies (no trailing spaces, LF line endings).
std::string spectrum_csv(const SpectralDensity& s);
std::string allocation_csv(const Allocation& a, std::span<const double> weights);
std::string matrix_csv(const Eigen::MatrixXd& m);
std::string convergence_csv(const sim::SzegoRun& run);

json leakage_report_json(const LeakageReport& report, const std::string& allocation_csv_path,
                         bool capacity = false);
json mask_design_json(const MaskDesign& design);
json comparison_json(const LeakageCapacityComparison& cmp, double input_power,
                     double noise_power);
json audit_json(const sim::AuditReport& audit);
json convergence_json(const sim::SzegoRun& run, double noise_budget);

/// Validates a document against a small JSON-schema subset: "type",
/// "properties", "required", "items", "enum". Returns false and fills `why`
/// on the first violation.
bool validate_schema(const json& doc, const json& schema, std::string* why);

}  // namespace leakwise::io
