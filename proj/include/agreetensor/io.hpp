#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "agreetensor/estimation.hpp"
#include "agreetensor/geometry.hpp"
#include "agreetensor/models.hpp"
#include "agreetensor/tensor.hpp"

namespace agreetensor {

// Tensor text format: "n=<int>" then one "i j k value" line per cell, each cell exactly
// once, in any order. Values are decimals or p/q and are read exactly. Blank lines and
// lines starting with # are skipped.

ExactTensor read_tensor(std::istream& in, Normalization mode = Normalization::Require);
FloatTensor read_float_tensor(std::istream& in, Normalization mode = Normalization::Require);
void write_tensor(std::ostream& out, const ExactTensor& t);
void write_tensor(std::ostream& out, const FloatTensor& t);

/// Same layout with non-negative integer values.
CountTensor read_counts(std::istream& in);
void write_counts(std::ostream& out, const CountTensor& counts);

/// Reads a JSON value that must hold a number or a numeric string, exactly: JSON numbers go
/// through their shortest decimal spelling, so 0.1 is 1/10.
Rational json_rational(const nlohmann::json& value, const std::string& what);

/// {"family": "pQI", "n": 3, "a": [...], "b": [...], "c": [...], "gamma12": "2", ...}.
/// QI: "gamma" is a list; qI: "gamma" is a number; Mix: "d" and "alpha"; mix: "alpha";
/// pQI: "gamma12", "gamma13", "gamma23"; pMix: "alpha12", "alpha13", "alpha23",
/// "alpha123" and optionally "alpha0" (otherwise one minus the rest). "n" is optional but
/// must match the vectors when present. Missing keys and bad values throw Parse.
ModelParams<Rational> params_from_json(const nlohmann::json& j);
nlohmann::json params_to_json(const ModelParams<Rational>& params);
nlohmann::json params_to_json(const ModelParams<double>& params);

template <class T>
struct Marginals {
  std::vector<T> a, b, c;
};

/// {"a": [...], "b": [...], "c": [...]}, each on the simplex.
Marginals<Rational> marginals_from_json(const nlohmann::json& j);

/// Parameter JSON of the fit plus a "metadata" block (loglik, iterations, converged,
/// warnings). Without finite parameters only "family", "n" and the metadata are written.
nlohmann::json fit_to_json(const FitResult& fit);

nlohmann::json counterexample_to_json(const Counterexample& example);

// File helpers; failures throw Io.
std::string read_text_file(const std::filesystem::path& path);
nlohmann::json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace agreetensor
