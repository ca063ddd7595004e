#include "agreetensor/io.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace agreetensor {

using nlohmann::json;

namespace {

[[noreturn]] void parse_error(const std::string& what) { throw Error(ErrorCode::Parse, what); }

bool skippable(const std::string& line) {
  const auto pos = line.find_first_not_of(" \t\r");
  return pos == std::string::npos || line[pos] == '#';
}

// Cell values as written, in storage order.
std::pair<int, std::vector<std::string>> read_cells(std::istream& in) {
  std::string line;
  int lineno = 0;
  int n = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (skippable(line)) continue;
    std::string compact;
    for (char ch : line) {
      if (ch != ' ' && ch != '\t' && ch != '\r') compact += ch;
    }
    if (compact.rfind("n=", 0) != 0) parse_error("line " + std::to_string(lineno) + ": expected n=<int>");
    try {
      std::size_t used = 0;
      n = std::stoi(compact.substr(2), &used);
      if (used != compact.size() - 2) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      parse_error("line " + std::to_string(lineno) + ": bad category count");
    }
    break;
  }
  if (n < 1) parse_error("missing or non-positive n");
  std::vector<std::string> values(static_cast<std::size_t>(n) * n * n);
  std::vector<bool> seen(values.size(), false);
  std::size_t count = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (skippable(line)) continue;
    std::istringstream fields(line);
    Cell c;
    std::string value, extra;
    if (!(fields >> c.i >> c.j >> c.k >> value) || (fields >> extra)) {
      parse_error("line " + std::to_string(lineno) + ": expected 'i j k value'");
    }
    if (c.i < 1 || c.j < 1 || c.k < 1 || c.i > n || c.j > n || c.k > n) {
      parse_error("line " + std::to_string(lineno) + ": index outside 1.." + std::to_string(n));
    }
    const auto idx = flat_index(n, c);
    if (seen[idx]) parse_error("line " + std::to_string(lineno) + ": duplicate cell");
    seen[idx] = true;
    values[idx] = value;
    ++count;
  }
  if (count != values.size()) {
    parse_error("expected " + std::to_string(values.size()) + " cells, got " + std::to_string(count));
  }
  return {n, std::move(values)};
}

template <class T, class F>
void write_cells(std::ostream& out, const Tensor<T>& t, F&& format) {
  out << "n=" << t.n() << '\n';
  for (const Cell& c : all_cells(t.n())) {
    out << c.i << ' ' << c.j << ' ' << c.k << ' ' << format(t(c.i, c.j, c.k)) << '\n';
  }
}

std::string full_precision(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

const json& member(const json& j, const char* key) {
  if (!j.is_object()) parse_error("expected a JSON object");
  auto it = j.find(key);
  if (it == j.end()) parse_error(std::string("missing key '") + key + "'");
  return *it;
}

std::vector<Rational> rational_list(const json& j, const char* key) {
  const json& v = member(j, key);
  if (!v.is_array()) parse_error(std::string("'") + key + "' must be a list");
  std::vector<Rational> out;
  for (const auto& x : v) out.push_back(json_rational(x, key));
  return out;
}

Rational rational_at(const json& j, const char* key) { return json_rational(member(j, key), key); }

template <class T>
json scalar_json(const T& x) {
  if constexpr (ScalarTraits<T>::exact) {
    return to_string(x);
  } else {
    return x;
  }
}

template <class T>
json list_json(const std::vector<T>& v) {
  json out = json::array();
  for (const T& x : v) out.push_back(scalar_json(x));
  return out;
}

template <class T>
json params_json(const ModelParams<T>& params) {
  json j;
  j["family"] = to_string(family_of(params));
  j["n"] = dimension(params);
  std::visit(
      [&](const auto& p) {
        using P = std::decay_t<decltype(p)>;
        j["a"] = list_json(p.a);
        j["b"] = list_json(p.b);
        j["c"] = list_json(p.c);
        if constexpr (std::is_same_v<P, QIParams<T>>) {
          j["gamma"] = list_json(p.gamma);
        } else if constexpr (std::is_same_v<P, MixParams<T>>) {
          j["d"] = list_json(p.d);
          j["alpha"] = scalar_json(p.alpha);
        } else if constexpr (std::is_same_v<P, QICommonParams<T>>) {
          j["gamma"] = scalar_json(p.gamma);
        } else if constexpr (std::is_same_v<P, MixUniformParams<T>>) {
          j["alpha"] = scalar_json(p.alpha);
        } else if constexpr (std::is_same_v<P, PairwiseQIParams<T>>) {
          j["gamma12"] = scalar_json(p.gamma12);
          j["gamma13"] = scalar_json(p.gamma13);
          j["gamma23"] = scalar_json(p.gamma23);
        } else {
          j["alpha0"] = scalar_json(p.alpha0);
          j["alpha12"] = scalar_json(p.alpha12);
          j["alpha13"] = scalar_json(p.alpha13);
          j["alpha23"] = scalar_json(p.alpha23);
          j["alpha123"] = scalar_json(p.alpha123);
        }
      },
      params);
  return j;
}

}  // namespace

ExactTensor read_tensor(std::istream& in, Normalization mode) {
  auto [n, values] = read_cells(in);
  std::vector<Rational> entries;
  entries.reserve(values.size());
  for (const auto& v : values) entries.push_back(parse_rational(v));
  return ExactTensor::from_entries(n, std::move(entries), mode);
}

FloatTensor read_float_tensor(std::istream& in, Normalization mode) {
  auto [n, values] = read_cells(in);
  std::vector<double> entries;
  entries.reserve(values.size());
  for (const auto& v : values) entries.push_back(to_double(parse_rational(v)));
  return FloatTensor::from_entries(n, std::move(entries), mode);
}

void write_tensor(std::ostream& out, const ExactTensor& t) {
  write_cells(out, t, [](const Rational& x) { return to_string(x); });
}

void write_tensor(std::ostream& out, const FloatTensor& t) { write_cells(out, t, full_precision); }

CountTensor read_counts(std::istream& in) {
  auto [n, values] = read_cells(in);
  std::vector<std::uint64_t> entries;
  entries.reserve(values.size());
  for (const auto& v : values) {
    const Rational r = parse_rational(v);
    if (r.get_den() != 1 || sgn(r) < 0 || !r.get_num().fits_ulong_p()) {
      parse_error("count '" + v + "' is not a non-negative integer");
    }
    entries.push_back(r.get_num().get_ui());
  }
  return CountTensor::from_entries(n, std::move(entries));
}

void write_counts(std::ostream& out, const CountTensor& counts) {
  out << "n=" << counts.n() << '\n';
  for (const Cell& c : all_cells(counts.n())) {
    out << c.i << ' ' << c.j << ' ' << c.k << ' ' << counts(c.i, c.j, c.k) << '\n';
  }
}

Rational json_rational(const json& value, const std::string& what) {
  try {
    if (value.is_string()) return parse_rational(value.get<std::string>());
    if (value.is_number()) return parse_rational(value.dump());
  } catch (const Error& e) {
    parse_error("'" + what + "': " + e.what());
  }
  parse_error("'" + what + "' must be a number or a numeric string");
}

ModelParams<Rational> params_from_json(const json& j) {
  const json& fam = member(j, "family");
  if (!fam.is_string()) parse_error("'family' must be a string");
  const Family family = parse_family(fam.get<std::string>());
  auto a = rational_list(j, "a"), b = rational_list(j, "b"), c = rational_list(j, "c");
  if (j.contains("n")) {
    const json& n = j["n"];
    if (!n.is_number_integer() || n.get<long>() != static_cast<long>(a.size())) {
      parse_error("'n' does not match the length of 'a'");
    }
  }
  ModelParams<Rational> out;
  switch (family) {
    case Family::QI: out = QIParams<Rational>{a, b, c, rational_list(j, "gamma")}; break;
    case Family::Mix: out = MixParams<Rational>{a, b, c, rational_list(j, "d"), rational_at(j, "alpha")}; break;
    case Family::qI: out = QICommonParams<Rational>{a, b, c, rational_at(j, "gamma")}; break;
    case Family::mix: out = MixUniformParams<Rational>{a, b, c, rational_at(j, "alpha")}; break;
    case Family::pQI:
      out = PairwiseQIParams<Rational>{a, b, c, rational_at(j, "gamma12"), rational_at(j, "gamma13"),
                                       rational_at(j, "gamma23")};
      break;
    case Family::pMix: {
      PairwiseMixParams<Rational> p{a, b, c};
      p.alpha12 = rational_at(j, "alpha12");
      p.alpha13 = rational_at(j, "alpha13");
      p.alpha23 = rational_at(j, "alpha23");
      p.alpha123 = rational_at(j, "alpha123");
      p.alpha0 = j.contains("alpha0") ? rational_at(j, "alpha0")
                                      : Rational(1 - p.alpha12 - p.alpha13 - p.alpha23 - p.alpha123);
      out = p;
      break;
    }
  }
  validate(out);
  return out;
}

json params_to_json(const ModelParams<Rational>& params) { return params_json(params); }
json params_to_json(const ModelParams<double>& params) { return params_json(params); }

Marginals<Rational> marginals_from_json(const json& j) {
  Marginals<Rational> m{rational_list(j, "a"), rational_list(j, "b"), rational_list(j, "c")};
  detail::check_margins(m.a, m.b, m.c, true);
  return m;
}

json fit_to_json(const FitResult& fit) {
  json j;
  if (fit.params) {
    j = params_to_json(*fit.params);
  } else {
    j["family"] = to_string(fit.family);
    j["n"] = fit.fitted.n();
  }
  j["metadata"] = {{"loglik", fit.loglik},
                   {"iterations", fit.iterations},
                   {"converged", fit.converged},
                   {"warnings", fit.warnings}};
  j["fitted"] = std::vector<double>(fit.fitted.entries().begin(), fit.fitted.entries().end());
  return j;
}

json counterexample_to_json(const Counterexample& example) {
  json entries = json::array();
  for (const Rational& x : example.tensor.entries()) entries.push_back(to_string(x));
  return {{"direction", to_string(example.direction)},
          {"n", example.tensor.n()},
          {"tensor", entries},
          {"witness", example.witness},
          {"witness_holds", check_witness(example)}};
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::Io, "cannot read " + path.string());
  return buf.str();
}

json read_json_file(const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::Parse, path.string() + ": " + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(ErrorCode::Io, "write failed for " + path.string());
}

}  // namespace agreetensor
