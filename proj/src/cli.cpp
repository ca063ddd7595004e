#include "agreetensor/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "agreetensor/agreement.hpp"
#include "agreetensor/estimation.hpp"
#include "agreetensor/geometry.hpp"
#include "agreetensor/invariants.hpp"
#include "agreetensor/io.hpp"
#include "agreetensor/polynomial.hpp"

namespace agreetensor::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Family family_flag(const std::string& text) {
  try {
    return parse_family(text);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

void require_n(int n, int lo, int hi) {
  if (n < lo || n > hi) {
    throw UsageError("--n must lie in " + std::to_string(lo) + ".." + std::to_string(hi));
  }
}

void emit(std::ostream& out, const std::string& path, const std::string& text) {
  if (path == "-") {
    out << text;
  } else {
    write_text_file(path, text);
  }
}

std::string one_line(std::string s) {
  for (char& c : s) {
    if (c == '\n' || c == '\r') c = ' ';
  }
  return s;
}

// Checks every polynomial on samples of `family`; prints one PASS/FAIL line.
bool vanishing_check(std::ostream& out, const std::string& label, Family family, int n,
                     const std::vector<SparsePolynomial>& polys, std::uint64_t seed0, int seeds) {
  std::size_t failures = 0;
  std::string first;
  for (int s = 0; s < seeds; ++s) {
    const std::uint64_t seed = seed0 + static_cast<std::uint64_t>(s);
    VanishingChecker checker(materialize(sample_params(family, n, seed)));
    for (const auto& p : polys) {
      if (!checker.vanishes(p)) {
        if (failures++ == 0) first = p.to_string() + " at seed " + std::to_string(seed);
      }
    }
  }
  out << (failures == 0 ? "PASS " : "FAIL ") << label << ' ' << to_string(family) << " n=" << n << ": "
      << polys.size() << " polynomials on " << seeds << " samples";
  if (failures) out << ", " << failures << " failures (first: " << first << ")";
  out << '\n';
  return failures == 0;
}

bool verify_family(std::ostream& out, Family f, int n, std::uint64_t seed0, int seeds) {
  bool ok = true;
  auto skip = [&](const std::string& what, const Error& e) {
    out << "SKIP " << what << ' ' << to_string(f) << " n=" << n << ": " << one_line(e.what()) << '\n';
  };
  try {
    ok &= vanishing_check(out, "catalog", f, n, catalog(f, n), seed0, seeds);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::Unsupported) throw;
    if (f == Family::pQI) {
      ok &= vanishing_check(out, "toric degree-3", f, n, toric_binomials(f, n, 3), seed0, seeds);
    } else {
      skip("catalog", e);
    }
  }
  if (f == Family::qI || f == Family::mix) {
    try {
      auto generated = f == Family::qI ? generate_qin_invariants(n) : generate_mixn_invariants(n);
      if (generated.empty()) {
        out << "FAIL generator " << to_string(f) << " n=" << n << ": empty output\n";
        ok = false;
      } else {
        ok &= vanishing_check(out, "generator", f, n, generated, seed0, seeds);
      }
    } catch (const Error& e) {
      if (e.code() != ErrorCode::BudgetExceeded && e.code() != ErrorCode::Unsupported) throw;
      skip("generator", e);
    }
  }
  return ok;
}

void print_kappa(std::ostream& out, const char* name, const Rational& k) {
  out << name << " = " << to_string(k) << " (" << format_decimal(to_double(k)) << ")\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Three-rater agreement models: tensors, kappas, invariants, fitting"};
  app.name("agreetensor");
  app.require_subcommand(1);

  std::string params_path, out_path = "-", tensor_path, counts_path, marginals_path;
  std::string family_text, direction_text;
  int n = 0, degree = 0, seeds = 100, max_degree = 0, restarts = 5;
  unsigned threads = 0;
  std::uint64_t seed = 0;
  double tol = 0.0;
  std::size_t max_iter = 100000;
  bool generate = false;

  auto* materialize_cmd = app.add_subcommand("materialize", "Parameter JSON to tensor text");
  materialize_cmd->add_option("--params", params_path, "parameter file")->required();
  materialize_cmd->add_option("--out", out_path, "output tensor file (- for stdout)");

  auto* kappa_cmd = app.add_subcommand("kappa", "Pairwise kappas of a tensor file");
  kappa_cmd->add_option("--tensor", tensor_path, "tensor file")->required();

  auto* sweep_cmd = app.add_subcommand("sweep", "Kappa map over the default gamma or alpha grid");
  sweep_cmd->add_option("--family", family_text, "pqi or pmix")->required();
  sweep_cmd->add_option("--n", n, "categories")->required();
  sweep_cmd->add_option("--marginals", marginals_path, "JSON with a, b, c (default uniform)");
  sweep_cmd->add_option("--out", out_path, "CSV file (- for stdout)");
  sweep_cmd->add_option("--threads", threads, "worker threads (0 = AGREETENSOR_THREADS or all)");

  auto* invariants_cmd = app.add_subcommand("invariants", "Write a catalog or generated invariants");
  invariants_cmd->add_option("--family", family_text, "model family")->required();
  invariants_cmd->add_option("--n", n, "categories")->required();
  invariants_cmd->add_flag("--generate", generate, "use the qI/mix generators");
  invariants_cmd->add_option("--max-degree", max_degree, "generator degree cap (0 = all)");
  invariants_cmd->add_option("--out", out_path, "polynomial file (- for stdout)");

  auto* verify_cmd = app.add_subcommand("verify", "Exact vanishing of catalogs and generators on samples");
  verify_cmd->add_option("--family", family_text, "model family or all")->required();
  verify_cmd->add_option("--n", n, "categories")->required();
  verify_cmd->add_option("--seeds", seeds, "number of samples");
  verify_cmd->add_option("--seed", seed, "first sample seed");

  auto* fiber_cmd = app.add_subcommand("fiber-dim", "Dimension of a graded piece of a toric ideal");
  fiber_cmd->add_option("--family", family_text, "QI, qI or pQI")->required();
  fiber_cmd->add_option("--n", n, "categories")->required();
  fiber_cmd->add_option("--degree", degree, "degree")->required();

  auto* fit_cmd = app.add_subcommand("fit", "Fit a family to a counts file");
  fit_cmd->add_option("--family", family_text, "model family")->required();
  fit_cmd->add_option("--counts", counts_path, "counts file")->required();
  fit_cmd->add_option("--out", out_path, "result JSON (- for stdout)");
  fit_cmd->add_option("--seed", seed, "EM seed");
  fit_cmd->add_option("--tol", tol, "stopping tolerance (default 1e-10 IPF, 1e-8 EM)");
  fit_cmd->add_option("--max-iter", max_iter, "iteration cap");
  fit_cmd->add_option("--restarts", restarts, "EM restarts");

  auto* counter_cmd = app.add_subcommand("counterexample", "Boundary tensor in one model but not the other");
  counter_cmd->add_option("--direction", direction_text, "MixNotInQI or QINotInMix")->required();
  counter_cmd->add_option("--n", n, "categories")->required();
  counter_cmd->add_option("--out", out_path, "JSON report (default: text on stdout)");

  std::vector<const char*> argv{"agreetensor"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return Ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return Ok;
  } catch (const CLI::ParseError& e) {
    err << "agreetensor: usage error: " << one_line(e.what()) << '\n';
    return Usage;
  }

  try {
    if (materialize_cmd->parsed()) {
      const auto params = params_from_json(read_json_file(params_path));
      std::ostringstream text;
      write_tensor(text, materialize(params));
      emit(out, out_path, text.str());
    } else if (kappa_cmd->parsed()) {
      std::istringstream in(read_text_file(tensor_path));
      const auto k = pairwise_kappas(read_tensor(in));
      print_kappa(out, "kappa12", k.kappa12);
      print_kappa(out, "kappa13", k.kappa13);
      print_kappa(out, "kappa23", k.kappa23);
    } else if (sweep_cmd->parsed()) {
      const Family f = family_flag(family_text);
      if (f != Family::pQI && f != Family::pMix) throw UsageError("--family must be pqi or pmix");
      require_n(n, 2, 1000);
      SweepGrid grid = f == Family::pQI ? SweepGrid::pqi_default(n) : SweepGrid::pmix_default(n);
      if (!marginals_path.empty()) {
        const auto m = marginals_from_json(read_json_file(marginals_path));
        if (static_cast<int>(m.a.size()) != n) throw UsageError("marginals do not have n coordinates");
        grid.a = to_float_vector(m.a);
        grid.b = to_float_vector(m.b);
        grid.c = to_float_vector(m.c);
      }
      std::ostringstream csv;
      write_sweep_csv(csv, f, sweep(grid, threads));
      emit(out, out_path, csv.str());
    } else if (invariants_cmd->parsed()) {
      const Family f = family_flag(family_text);
      require_n(n, 2, 5);
      std::vector<SparsePolynomial> polys;
      if (generate) {
        if (f != Family::qI && f != Family::mix) throw UsageError("--generate needs --family qI or mix");
        GeneratorOptions options;
        options.max_degree = max_degree;
        polys = f == Family::qI ? generate_qin_invariants(n, options) : generate_mixn_invariants(n, options);
      } else {
        polys = catalog(f, n);
      }
      std::ostringstream text;
      write_polynomials(text, polys);
      emit(out, out_path, text.str());
      if (out_path != "-") out << polys.size() << " polynomials written to " << out_path << '\n';
    } else if (verify_cmd->parsed()) {
      require_n(n, 2, 5);
      if (seeds < 1) throw UsageError("--seeds must be positive");
      std::vector<Family> families;
      if (family_text == "all") {
        families = {Family::QI, Family::Mix, Family::qI, Family::mix, Family::pQI, Family::pMix};
      } else {
        families = {family_flag(family_text)};
      }
      bool ok = true;
      for (Family f : families) ok &= verify_family(out, f, n, seed, seeds);
      if (!ok) {
        err << "agreetensor: verification failed\n";
        return VerificationFailed;
      }
    } else if (fiber_cmd->parsed()) {
      const Family f = family_flag(family_text);
      if (f != Family::QI && f != Family::qI && f != Family::pQI) {
        throw UsageError("--family must be QI, qI or pQI");
      }
      require_n(n, 2, 8);
      if (degree < 1) throw UsageError("--degree must be positive");
      out << fiber_dimension(f, n, degree) << '\n';
    } else if (fit_cmd->parsed()) {
      const Family f = family_flag(family_text);
      if (tol < 0.0) throw UsageError("--tol must be positive");
      if (max_iter < 1) throw UsageError("--max-iter must be positive");
      std::istringstream in(read_text_file(counts_path));
      const auto counts = read_counts(in);
      FitOptions options;
      options.tol = tol;
      options.max_iter = max_iter;
      options.seed = seed;
      options.restarts = restarts;
      const auto result = fit(counts, f, options);
      emit(out, out_path, fit_to_json(result).dump(2) + "\n");
      if (out_path != "-") {
        out << "family=" << to_string(f) << " loglik=" << format_decimal(result.loglik)
            << " iterations=" << result.iterations << " converged=" << (result.converged ? "true" : "false")
            << '\n';
      }
      for (const auto& w : result.warnings) err << "agreetensor: warning: " << one_line(w) << '\n';
    } else if (counter_cmd->parsed()) {
      Direction d;
      try {
        d = parse_direction(direction_text);
      } catch (const Error& e) {
        throw UsageError(e.what());
      }
      require_n(n, 2, 50);
      const auto example = boundary_counterexample(d, n);
      const bool holds = check_witness(example);
      if (out_path != "-") {
        write_text_file(out_path, counterexample_to_json(example).dump(2) + "\n");
      } else {
        write_tensor(out, example.tensor);
        for (const auto& line : example.witness) out << line << '\n';
      }
      out << "witness " << (holds ? "holds" : "FAILS") << '\n';
      if (!holds) {
        err << "agreetensor: witness check failed\n";
        return VerificationFailed;
      }
    }
  } catch (const UsageError& e) {
    err << "agreetensor: usage error: " << one_line(e.what()) << '\n';
    return Usage;
  } catch (const std::exception& e) {
    err << "agreetensor: error: " << one_line(e.what()) << '\n';
    return Failure;
  }
  return Ok;
}

}  // namespace agreetensor::cli
