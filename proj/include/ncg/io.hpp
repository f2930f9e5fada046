#pragma once

// JSON and CSV exchange formats.
//
//   theta      row-major k x k array (nested rows or flat)
//   element    [{"index": [..], "re": x, "im": y}, ...]
//   report     [{"check", "ref", "violation", "radius", "pass"}, ...]
//   operator   {"space": {"k", "lambda", "spinor_dim"}, "antilinear", "shift_radius",
//               "matrix": [[[re, im], ...], ...]}
//   family     {"n", "m", "vertical_units", "b": [[element, ...], ...],
//               "extra": [[{"p": element, "q": element}, ...], ...] (optional)}
//   spectrum   CSV "index,eigenvalue,multiplicity", ascending

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "ncg/connection.hpp"

namespace ncg {

using Json = nlohmann::json;

ThetaMatrix theta_from_json(const Json& j);
Json theta_to_json(const ThetaMatrix& theta);

AlgebraElement element_from_json(const Json& j, const ThetaPtr& theta);
Json element_to_json(const AlgebraElement& a);

Json report_to_json(const VerificationReport& report);
VerificationReport report_from_json(const Json& j);

Json operator_to_json(const LinearOperator& op);
LinearOperator operator_from_json(const Json& j);

Json family_to_json(const ConnectionFamily& family);
ConnectionFamily family_from_json(const Json& j, const ThetaPtr& theta);

Json recipe_to_json(const BaseRecipe& recipe);

struct SpectrumRow {
  double eigenvalue = 0.0;
  int multiplicity = 0;
};

/// Groups sorted eigenvalues whose distance to the first member of the group is <= resolution.
std::vector<SpectrumRow> merge_spectrum(const std::vector<double>& sorted, double resolution = 1e-9);
std::string spectrum_csv(const std::vector<SpectrumRow>& rows);
std::vector<SpectrumRow> parse_spectrum_csv(const std::string& text);

/// Throw IoError on failure.
Json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace ncg
