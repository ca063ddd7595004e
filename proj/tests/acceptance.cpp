// One PASS/FAIL line per acceptance criterion. Exit status is the number of failures.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "agreetensor/agreement.hpp"
#include "agreetensor/estimation.hpp"
#include "agreetensor/geometry.hpp"
#include "agreetensor/invariants.hpp"
#include "agreetensor/models.hpp"
#include "agreetensor/polynomial.hpp"

using namespace agreetensor;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

void fail(Outcome& o, const std::string& why) {
  if (o.pass) o.detail = why;
  o.pass = false;
}

std::vector<Rational> uniform(int n) { return std::vector<Rational>(n, Rational(1, n)); }

double max_diff(const FloatTensor& x, const FloatTensor& y) {
  double worst = 0;
  for (std::size_t i = 0; i < x.entries().size(); ++i) {
    worst = std::max(worst, std::abs(x.entries()[i] - y.entries()[i]));
  }
  return worst;
}

// 1. catalogs vanish exactly
Outcome invariant_vanishing() {
  Outcome o;
  std::size_t checks = 0;
  for (Family f : {Family::QI, Family::Mix, Family::qI, Family::mix, Family::pQI}) {
    const auto polys = catalog(f, 2);
    if (polys.empty()) fail(o, std::string("empty catalog for ") + to_string(f));
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const auto p = materialize(sample_params(f, 2, seed));
      for (const auto& poly : polys) {
        ++checks;
        if (poly.evaluate(p) != 0) fail(o, std::string(to_string(f)) + " seed " + std::to_string(seed) + ": " + poly.to_string());
      }
    }
  }
  if (o.pass) o.detail = std::to_string(checks) + " exact evaluations are 0";
  return o;
}

bool contains_up_to_sign(const std::vector<SparsePolynomial>& canonical, const SparsePolynomial& p) {
  const auto c = canonical_list({p});
  return c.size() == 1 && std::find(canonical.begin(), canonical.end(), c.front()) != canonical.end();
}

// 2. generator families are sound and reproduce the two-category lists
Outcome generator_soundness() {
  Outcome o;
  std::ostringstream counts;
  for (Family f : {Family::qI, Family::mix}) {
    for (int n : {2, 3}) {
      const auto gens = f == Family::qI ? generate_qin_invariants(n) : generate_mixn_invariants(n);
      counts << to_string(f) << n << "=" << gens.size() << " ";
      if (gens.empty()) fail(o, std::string("no generators for ") + to_string(f) + " n=" + std::to_string(n));
      for (std::uint64_t seed = 0; seed < 50; ++seed) {
        VanishingChecker checker(materialize(sample_params(f, n, seed)));
        for (const auto& g : gens) {
          if (!checker.vanishes(g)) {
            fail(o, std::string(to_string(f)) + " n=" + std::to_string(n) + " seed " + std::to_string(seed) + ": " +
                        g.to_string());
            break;
          }
        }
      }
      if (n == 2) {
        const auto canonical = canonical_list(gens);
        const auto listed = catalog(f, 2);
        if (listed.size() != 10) fail(o, std::string("expected ten listed polynomials for ") + to_string(f));
        for (const auto& p : listed) {
          if (!contains_up_to_sign(canonical, p)) fail(o, "generated " + std::string(to_string(f)) + "2 misses " + p.to_string());
        }
      }
    }
  }
  if (o.pass) o.detail = counts.str() + "all vanish on 50 samples, both ten-polynomial lists contained";
  return o;
}

// 3. toric fiber counts
Outcome counting() {
  Outcome o;
  const auto p2 = fiber_dimension(Family::pQI, 3, 2);
  const auto p3 = fiber_dimension(Family::pQI, 3, 3);
  const auto q2 = fiber_dimension(Family::QI, 2, 2);
  o.detail = "pQI3 deg2=" + std::to_string(p2) + " deg3=" + std::to_string(p3) + ", QI2 deg2=" + std::to_string(q2);
  o.pass = p2 == 0 && p3 == 52 && q2 == 2;
  return o;
}

// 4. closed-form kappas against materialized tensors
Outcome closed_form_kappa() {
  Outcome o;
  for (int n : {2, 3, 5}) {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      auto q = std::get<PairwiseQIParams<Rational>>(sample_params(Family::pQI, n, seed));
      q.a = q.b = q.c = uniform(n);
      if (pairwise_kappas(materialize(ModelParams<Rational>(q))) != kappa_pqi_uniform(n, q.gamma12, q.gamma13, q.gamma23)) {
        fail(o, "pQI n=" + std::to_string(n) + " seed " + std::to_string(seed));
      }
      auto m = std::get<PairwiseMixParams<Rational>>(sample_params(Family::pMix, n, seed));
      m.a = m.b = m.c = uniform(n);
      const auto k = pairwise_kappas(materialize(ModelParams<Rational>(m)));
      if (k != kappa_pmix_uniform(m.alpha12, m.alpha13, m.alpha23, m.alpha123) ||
          k.kappa12 != m.alpha12 + m.alpha123) {
        fail(o, "pMix n=" + std::to_string(n) + " seed " + std::to_string(seed));
      }
    }
  }
  PairwiseQIParams<Rational> spot{uniform(2), uniform(2), uniform(2), Rational(3), Rational(3), Rational(3)};
  const auto k = pairwise_kappas(materialize(ModelParams<Rational>(spot)));
  const Rational two_thirds(2, 3);
  if (k.kappa12 != two_thirds || k.kappa13 != two_thirds || k.kappa23 != two_thirds) fail(o, "spot value is not 2/3");
  if (o.pass) o.detail = "1200 exact draws agree, spot value 2/3";
  return o;
}

std::string csv_of(const SweepGrid& grid, unsigned threads) {
  std::ostringstream out;
  write_sweep_csv(out, grid.family, sweep(grid, threads));
  return out.str();
}

std::vector<std::vector<std::string>> rows_of(const std::string& csv) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream cells(line);
    while (std::getline(cells, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.push_back("");
    rows.push_back(fields);
  }
  return rows;
}

// 5. sweeps
Outcome sweep_reproduction() {
  Outcome o;
  double slowest = 0;
  auto timed = [&](const SweepGrid& g, unsigned threads) -> std::string {
    const auto t0 = std::chrono::steady_clock::now();
    auto s = csv_of(g, threads);
    slowest = std::max(slowest, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    return s;
  };
  for (int n : {2, 5}) {
    const auto grid = SweepGrid::pqi_default(n);
    const auto first = timed(grid, 1);
    if (first != timed(grid, 0)) fail(o, "pQI n=" + std::to_string(n) + " CSV differs between runs");
    const auto rows = rows_of(first);
    if (rows.size() != 9261) fail(o, "pQI n=" + std::to_string(n) + ": " + std::to_string(rows.size()) + " records");
    for (const auto& r : rows) {
      if (r.size() != 7 || !r[6].empty()) {
        fail(o, "pQI record with error");
        break;
      }
      for (int col = 3; col < 6; ++col) {
        const double k = std::stod(r[col]);
        if (!(k >= 0 && k <= 1)) fail(o, "pQI n=" + std::to_string(n) + " kappa " + r[col] + " outside [0, 1]");
      }
    }
  }
  std::vector<std::vector<std::string>> kappa_cols[2];
  for (int idx = 0; idx < 2; ++idx) {
    const auto grid = SweepGrid::pmix_default(idx == 0 ? 2 : 5);
    const auto first = timed(grid, 1);
    if (first != timed(grid, 0)) fail(o, "pMix CSV differs between runs");
    for (const auto& r : rows_of(first)) kappa_cols[idx].push_back({r.begin() + 5, r.end()});
  }
  if (kappa_cols[0].empty() || kappa_cols[0] != kappa_cols[1]) fail(o, "pMix kappa columns differ between n=2 and n=5");
  if (slowest >= 60) fail(o, "a sweep took " + std::to_string(slowest) + " s");
  if (o.pass) {
    o.detail = "9261 pQI records per n with kappa in [0, 1], " + std::to_string(kappa_cols[0].size()) +
               " identical pMix rows, repeat runs byte-identical";
  }
  return o;
}

// 6. inclusion transfer and boundary witnesses
Outcome inclusion_transfer() {
  Outcome o;
  for (int n : {2, 3, 4}) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const auto m = std::get<MixParams<Rational>>(sample_params(Family::Mix, n, seed));
      if (materialize(ModelParams<Rational>(mix_to_qi(m))) != materialize(ModelParams<Rational>(m))) {
        fail(o, "transfer mismatch n=" + std::to_string(n) + " seed " + std::to_string(seed));
      }
    }
  }
  for (Direction d : {Direction::MixNotInQI, Direction::QINotInMix}) {
    for (int n = 2; n <= 6; ++n) {
      if (!check_witness(boundary_counterexample(d, n))) {
        fail(o, std::string(to_string(d)) + " witness fails for n=" + std::to_string(n));
      }
    }
  }
  if (o.pass) o.detail = "300 exact round trips, 10 witnesses hold";
  return o;
}

// 7. fitting
Outcome fitting() {
  Outcome o;
  const auto truth = materialize(sample_params(Family::pQI, 3, 21)).to_float();
  const auto ipf = ipf_fit(round_counts(truth, 1000000), Family::pQI);
  const double err = max_diff(ipf.fitted, truth);
  double residual = 0;
  for (const auto& f : toric_binomials(Family::pQI, 3, 3)) residual = std::max(residual, f.normalized_residual(ipf.fitted));
  if (!ipf.converged) fail(o, "IPF did not converge");
  if (!(err <= 1e-3)) fail(o, "IPF entrywise error " + std::to_string(err));
  if (!(residual <= 1e-6)) fail(o, "invariant residual " + std::to_string(residual));

  auto mix = std::get<MixUniformParams<Rational>>(sample_params(Family::mix, 3, 5));
  mix.alpha = Rational(7, 10);
  const auto em = em_fit(round_counts(materialize(ModelParams<Rational>(mix)).to_float(), 1000000), Family::mix);
  double alpha = -1;
  if (em.params) alpha = std::get<MixUniformParams<double>>(*em.params).alpha;
  if (!(std::abs(alpha - 0.7) <= 0.02)) fail(o, "EM alpha " + std::to_string(alpha));
  if (!em.monotone) fail(o, "EM loglik decreased");

  char buf[200];
  std::snprintf(buf, sizeof buf, "IPF max error %.2e, residual %.2e; EM alpha %.4f, monotone over %d restarts", err,
                residual, alpha, FitOptions{}.restarts);
  if (o.pass) o.detail = buf;
  return o;
}

struct Criterion {
  int id;
  const char* name;
  double limit_seconds;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "invariant vanishing", 5, invariant_vanishing},
      {2, "generator soundness", 60, generator_soundness},
      {3, "fiber counts", 30, counting},
      {4, "closed-form kappa", 10, closed_form_kappa},
      {5, "sweep reproduction", 240, sweep_reproduction},
      {6, "inclusion transfer", 1e9, inclusion_transfer},
      {7, "fitting", 120, fitting},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs >= c.limit_seconds) fail(o, "took " + std::to_string(secs) + " s");
    if (!o.pass) ++failures;
    std::printf("%s %d %s: %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  return failures;
}
