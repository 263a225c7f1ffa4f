#pragma once

// JSON and CSV forms of the library's values. Malformed input raises ValidationError.

#include "transpec/core_functions.hpp"
#include "transpec/frame_classifier.hpp"
#include "transpec/matrix_density.hpp"
#include "transpec/renorm_dependence.hpp"
#include "transpec/spectral_density.hpp"
#include "transpec/stochastic.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>
#include <vector>

namespace transpec {

using json = nlohmann::json;

json to_json(cplx z);  // [re, im]
cplx complex_from_json(const json& j);

/// {"breakpoints": [...], "values": [[re, im], ...]}
json to_json(const PiecewiseConstant& f);
PiecewiseConstant piecewise_from_json(const json& j);

/// Function spec document: {"kind": "piecewise" | "samples" | "builtin", ...}.
///   piecewise: breakpoints, values
///   samples:   window_start, step, values
///   builtin:   name
LineFunction function_from_json(const json& j);

/// A spec document or an array of them.
std::vector<LineFunction> family_from_json(const json& j);

json to_json(const PeriodicDensity& p);
json to_json(const FrameReport& r);
FrameReport frame_report_from_json(const json& j);
json to_json(const CoefficientSequence& c);
/// {"n_grid": n, "measure": m, "intervals": [[a, b], ...]}
json to_json(const GridSet& s);
json to_json(const Eigen::MatrixXcd& m);  // rows of [re, im]
json to_json(const MatrixDensityGrid& p);
json to_json(const CyclicDecomposition& d);

/// Shortest round-trip decimal form of x.
std::string format_number(double x);

/// CSV with header "x,re,im".
void write_samples_csv(std::ostream& out, const SampledLineFunction& f);
SampledLineFunction read_samples_csv(std::istream& in);

/// CSV with header "x,p".
void write_density_csv(std::ostream& out, const PeriodicDensity& p);
/// Reads "x,p" rows; x must be the uniform grid j/n.
PeriodicDensity read_density_csv(std::istream& in);

/// CSV "path_id,t,value" (real ensembles) or "path_id,t,re,im".
void write_ensemble_csv(std::ostream& out, const PathEnsemble& e);

/// Square real matrix, one comma-separated row per line.
Eigen::MatrixXcd read_real_matrix_csv(std::istream& in);

}  // namespace transpec
