#include "leakwise/io.hpp"

#include "leakwise/errors.hpp"

#include <charconv>
#include <cmath>
#include <sstream>
#include <system_error>

namespace leakwise::io {

namespace {

std::vector<double> number_array(const json& doc, const char* key) {
  if (!doc.contains(key) || !doc[key].is_array()) {
    throw_error(ErrorCode::InvalidArgument, std::string("expected array field '") + key + "'");
  }
  std::vector<double> values;
  values.reserve(doc[key].size());
  for (const auto& v : doc[key]) {
    if (!v.is_number()) {
      throw_error(ErrorCode::InvalidArgument, std::string("non-numeric entry in '") + key + "'");
    }
    values.push_back(v.get<double>());
  }
  return values;
}

double number_field(const json& doc, const char* key) {
  if (!doc.contains(key) || !doc[key].is_number()) {
    throw_error(ErrorCode::InvalidArgument, std::string("expected numeric field '") + key + "'");
  }
  return doc[key].get<double>();
}

const char* json_type_name(const json& v) {
  if (v.is_object()) return "object";
  if (v.is_array()) return "array";
  if (v.is_string()) return "string";
  if (v.is_boolean()) return "boolean";
  if (v.is_null()) return "null";
  if (v.is_number_integer() || v.is_number_unsigned()) return "integer";
  return "number";
}

bool validate_node(const json& doc, const json& schema, const std::string& path,
                   std::string* why) {
  auto fail = [&](const std::string& message) {
    if (why) *why = path + ": " + message;
    return false;
  };

  if (schema.contains("type")) {
    const std::string want = schema["type"].get<std::string>();
    const std::string got = json_type_name(doc);
    const bool ok = want == got || (want == "number" && got == "integer");
    if (!ok) return fail("expected type " + want + ", got " + got);
  }
  if (schema.contains("enum")) {
    bool found = false;
    for (const auto& candidate : schema["enum"]) {
      if (candidate == doc) {
        found = true;
        break;
      }
    }
    if (!found) return fail("value " + doc.dump() + " not in enum");
  }
  if (schema.contains("required")) {
    for (const auto& key : schema["required"]) {
      if (!doc.contains(key.get<std::string>())) {
        return fail("missing required field '" + key.get<std::string>() + "'");
      }
    }
  }
  if (schema.contains("properties") && doc.is_object()) {
    for (const auto& [key, sub] : schema["properties"].items()) {
      if (doc.contains(key)) {
        if (!validate_node(doc[key], sub, path + "/" + key, why)) return false;
      }
    }
  }
  if (schema.contains("items") && doc.is_array()) {
    for (std::size_t i = 0; i < doc.size(); ++i) {
      if (!validate_node(doc[i], schema["items"], path + "/" + std::to_string(i), why)) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buffer[32];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, result.ptr);
}

InputKind detect_input(const json& doc) {
  if (!doc.is_object()) {
    throw_error(ErrorCode::InvalidArgument, "input document must be a JSON object");
  }
  if (doc.contains("values")) return InputKind::Spectrum;
  if (doc.contains("rows")) return InputKind::Covariance;
  if (doc.contains("gains_sq")) return InputKind::Fading;
  if (doc.contains("innovation_variance")) return InputKind::Arma;
  throw_error(ErrorCode::InvalidArgument,
              "input matches no known schema (spectrum, covariance, fading, arma)");
}

json to_json(const SpectralDensity& s) {
  return json{{"grid_points", s.grid().num_points()}, {"values", s.values()}};
}

SpectralDensity spectral_density_from_json(const json& doc) {
  const auto points = static_cast<std::size_t>(number_field(doc, "grid_points"));
  return SpectralDensity(FrequencyGrid(points), number_array(doc, "values"));
}

json to_json(const CovarianceMatrix& c) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < c.dim(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < c.dim(); ++j) row.push_back(c.entries()(i, j));
    rows.push_back(std::move(row));
  }
  return json{{"dim", c.dim()}, {"rows", std::move(rows)}};
}

CovarianceMatrix covariance_from_json(const json& doc) {
  const auto dim = static_cast<Eigen::Index>(number_field(doc, "dim"));
  if (!doc.contains("rows") || !doc["rows"].is_array() ||
      doc["rows"].size() != static_cast<std::size_t>(dim)) {
    throw_error(ErrorCode::InvalidArgument, "covariance 'rows' must be a dim-sized array");
  }
  Eigen::MatrixXd entries(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    const auto& row = doc["rows"][static_cast<std::size_t>(i)];
    if (!row.is_array() || row.size() != static_cast<std::size_t>(dim)) {
      throw_error(ErrorCode::InvalidArgument, "covariance rows must each have dim entries");
    }
    for (Eigen::Index j = 0; j < dim; ++j) {
      entries(i, j) = row[static_cast<std::size_t>(j)].get<double>();
    }
  }
  return CovarianceMatrix(std::move(entries));
}

json to_json(const FadingModel& f) {
  return json{{"gains_sq", f.gains_sq()}, {"probs", f.probs()}};
}

FadingModel fading_from_json(const json& doc) {
  return FadingModel(number_array(doc, "gains_sq"), number_array(doc, "probs"));
}

json to_json(const ArmaModel& m) {
  return json{{"ma_coeffs", m.ma_coeffs},
              {"ar_coeffs", m.ar_coeffs},
              {"innovation_variance", m.innovation_variance}};
}

ArmaModel arma_from_json(const json& doc) {
  ArmaModel model;
  model.ma_coeffs = doc.contains("ma_coeffs") ? number_array(doc, "ma_coeffs")
                                              : std::vector<double>{};
  model.ar_coeffs = doc.contains("ar_coeffs") ? number_array(doc, "ar_coeffs")
                                              : std::vector<double>{};
  model.innovation_variance = number_field(doc, "innovation_variance");
  model.validate();
  return model;
}

std::string spectrum_csv(const SpectralDensity& s) {
  std::ostringstream out;
  out << "omega,value\n";
  for (std::size_t j = 0; j < s.size(); ++j) {
    out << format_double(s.grid().omega(j)) << ',' << format_double(s.values()[j]) << '\n';
  }
  return out.str();
}

std::string allocation_csv(const Allocation& a, std::span<const double> weights) {
  std::ostringstream out;
  out << "index,weight,power\n";
  for (std::size_t i = 0; i < a.powers.size(); ++i) {
    const double w = i < weights.size() ? weights[i] : 0.0;
    out << i << ',' << format_double(w) << ',' << format_double(a.powers[i]) << '\n';
  }
  return out.str();
}

std::string matrix_csv(const Eigen::MatrixXd& m) {
  std::ostringstream out;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j > 0) out << ',';
      out << format_double(m(i, j));
    }
    out << '\n';
  }
  return out.str();
}

std::string convergence_csv(const sim::SzegoRun& run) {
  std::ostringstream out;
  out << "K,per_sample_bits,abs_error\n";
  for (const auto& point : run.points) {
    out << point.horizon << ',' << format_double(point.per_sample_bits) << ','
        << format_double(point.abs_error) << '\n';
  }
  return out.str();
}

json leakage_report_json(const LeakageReport& report, const std::string& allocation_csv_path,
                         bool capacity) {
  json doc{
      {"regime", std::string(regime_name(report.regime))},
      {"constraint", std::string(constraint_name(report.constraint))},
      {"budget", report.budget},
      {capacity ? "capacity_bits" : "leakage_bits", report.value_bits},
      {"zeta", report.allocation ? report.allocation->water_level : 0.0},
      {"allocation_csv", allocation_csv_path},
  };
  if (report.allocation) doc["budget_residual"] = report.allocation->residual;
  return doc;
}

json mask_design_json(const MaskDesign& design) {
  json noise;
  if (const auto* spectrum = std::get_if<SpectralDensity>(&design.noise_spec)) {
    noise = to_json(*spectrum);
  } else if (const auto* per_state = std::get_if<std::vector<double>>(&design.noise_spec)) {
    noise = json{{"per_state_variances", *per_state}};
  } else if (const auto* cov = std::get_if<CovarianceMatrix>(&design.noise_spec)) {
    noise = to_json(*cov);
  } else {
    throw_error(ErrorCode::InvalidArgument, "mask design carries no noise specification");
  }
  json doc{
      {"regime", std::string(mask_regime_name(design.regime))},
      {"constraint", std::string(mask_constraint_name(design.constraint_kind))},
      {"achieved_leakage_bits", design.achieved_leakage_bits},
      {"budget_used", design.budget_used},
      {"zeta", design.water_level},
      {"noise_spec", std::move(noise)},
  };
  if (design.diagonal_penalty_bits) {
    doc["diagonal_penalty_bits"] = *design.diagonal_penalty_bits;
  }
  return doc;
}

json comparison_json(const LeakageCapacityComparison& cmp, double input_power,
                     double noise_power) {
  return json{
      {"leakage_bits", cmp.leakage_bits},
      {"capacity_bits", cmp.capacity_bits},
      {"leakage_le_capacity", cmp.leakage_le_capacity},
      {"input_power", input_power},
      {"noise_power", noise_power},
  };
}

json audit_json(const sim::AuditReport& audit) {
  return json{
      {"design_ref", audit.design_ref},
      {"empirical_distortion", audit.empirical_distortion},
      {"empirical_mi_bits", audit.empirical_mi_bits},
      {"num_paths", audit.num_paths},
      {"seed", audit.seed},
  };
}

json convergence_json(const sim::SzegoRun& run, double noise_budget) {
  json points = json::array();
  for (const auto& point : run.points) {
    points.push_back(json{{"K", point.horizon},
                          {"per_sample_bits", point.per_sample_bits},
                          {"abs_error", point.abs_error}});
  }
  return json{
      {"noise_budget", noise_budget},
      {"limit_bits", run.limit_bits},
      {"points", std::move(points)},
  };
}

bool validate_schema(const json& doc, const json& schema, std::string* why) {
  return validate_node(doc, schema, "$", why);
}

}  // namespace leakwise::io
