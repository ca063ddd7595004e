#include "agreetensor/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

namespace agreetensor {

CountTensor CountTensor::from_entries(int n, std::vector<std::uint64_t> entries) {
  if (n < 1) throw Error(ErrorCode::InvalidTensor, "category count must be positive");
  if (entries.size() != static_cast<std::size_t>(n) * n * n) {
    throw Error(ErrorCode::DimensionMismatch, "expected n^3 counts");
  }
  CountTensor t;
  t.n_ = n;
  for (auto e : entries) t.total_ += e;
  if (t.total_ == 0) throw Error(ErrorCode::InvalidTensor, "counts sum to zero");
  t.data_ = std::move(entries);
  return t;
}

FloatTensor CountTensor::proportions() const {
  std::vector<double> p;
  p.reserve(data_.size());
  for (auto e : data_) p.push_back(static_cast<double>(e) / static_cast<double>(total_));
  return FloatTensor::from_entries(n_, std::move(p), Normalization::Unnormalized).normalize();
}

CountTensor CountTensor::relabeled(const std::vector<int>& perm) const {
  std::vector<std::uint64_t> out(data_.size());
  for (const Cell& c : all_cells(n_)) {
    out[flat_index(n_, c)] = (*this)(perm[c.i - 1] + 1, perm[c.j - 1] + 1, perm[c.k - 1] + 1);
  }
  return from_entries(n_, std::move(out));
}

CountTensor round_counts(const FloatTensor& p, std::uint64_t total) {
  std::vector<std::uint64_t> out;
  out.reserve(p.entries().size());
  for (double v : p.entries()) {
    out.push_back(static_cast<std::uint64_t>(std::llround(v * static_cast<double>(total))));
  }
  return CountTensor::from_entries(p.n(), std::move(out));
}

double loglik(const CountTensor& counts, const FloatTensor& p) {
  if (counts.n() != p.n()) throw Error(ErrorCode::DimensionMismatch, "counts and tensor differ in size");
  double s = 0.0;
  for (std::size_t idx = 0; idx < counts.entries().size(); ++idx) {
    const auto nijk = counts.entries()[idx];
    if (nijk == 0) continue;
    const double v = p.entries()[idx];
    if (v <= 0.0) throw Error(ErrorCode::SupportMismatch, "zero probability on an observed cell");
    s += static_cast<double>(nijk) * std::log(v);
  }
  return s;
}

namespace {

std::vector<double> normalized(std::vector<double> v) {
  double s = 0.0;
  for (double x : v) s += x;
  if (s > 0.0) {
    for (double& x : v) x /= s;
  }
  return v;
}

// A 0/1 statistic of the fitted tensor; `param` names the weight it moves.
struct Statistic {
  std::string name;
  std::vector<std::size_t> cells;
  double target = 0.0;
  int param = 0;
};

std::vector<Statistic> family_statistics(Family family, int n, const FloatTensor& data) {
  std::vector<Statistic> out;
  auto add = [&](std::string name, int param, auto&& pred) {
    Statistic s{std::move(name), {}, 0.0, param};
    for (const Cell& c : all_cells(n)) {
      if (pred(c)) {
        const auto idx = flat_index(n, c);
        s.cells.push_back(idx);
        s.target += data.entries()[idx];
      }
    }
    out.push_back(std::move(s));
  };
  switch (family) {
    case Family::QI:
      for (int i = 1; i <= n; ++i) {
        add("P[" + std::to_string(i) + "," + std::to_string(i) + "," + std::to_string(i) + "]", i - 1,
            [i](Cell c) { return c.is_diagonal() && c.i == i; });
      }
      break;
    case Family::qI:
      add("diagonal total", 0, [](Cell c) { return c.is_diagonal(); });
      break;
    case Family::pQI:
      add("slab i=j", 0, [](Cell c) { return c.i == c.j; });
      add("slab i=k", 1, [](Cell c) { return c.i == c.k; });
      add("slab j=k", 2, [](Cell c) { return c.j == c.k; });
      break;
    default:
      throw Error(ErrorCode::Unsupported, "IPF fits QI, qI and pQI");
  }
  return out;
}

}  // namespace

FitResult ipf_fit(const CountTensor& counts, Family family, const FitOptions& options) {
  const int n = counts.n();
  const double tol = options.tol > 0.0 ? options.tol : kIpfTolerance;
  const FloatTensor data = counts.proportions();
  auto stats = family_statistics(family, n, data);
  std::vector<std::vector<double>> margin_targets;
  for (int axis = 1; axis <= 3; ++axis) margin_targets.push_back(one_way_marginal(data, axis));

  FitResult result;
  result.family = family;
  const auto cells = all_cells(n);
  std::vector<double> m(cells.size(), 1.0 / static_cast<double>(cells.size()));
  std::vector<std::vector<double>> margin_params(3, std::vector<double>(n, 1.0));
  std::vector<double> gamma(stats.size(), 1.0);
  bool infinite = false;

  for (const auto& s : stats) {
    if (s.target == 0.0) {
      result.warnings.push_back("zero statistic " + s.name + ": fitted weight is 0 (boundary fit)");
    } else if (1.0 - s.target <= 0.0 || std::abs(1.0 - s.target) < 1e-15) {
      result.warnings.push_back(std::string(to_string(ErrorCode::ZeroMarginUnsupported)) +
                                ": all mass lies in " + s.name +
                                "; the weight is unbounded and the fit continues on the support");
    }
  }
  for (int axis = 0; axis < 3; ++axis) {
    for (int v = 0; v < n; ++v) {
      if (margin_targets[axis][v] == 0.0) {
        result.warnings.push_back("zero statistic margin " + std::to_string(axis + 1) + " category " +
                                  std::to_string(v + 1) + ": boundary fit");
      }
    }
  }

  auto gap = [&]() {
    double worst = 0.0;
    for (int axis = 0; axis < 3; ++axis) {
      std::vector<double> cur(n, 0.0);
      for (std::size_t idx = 0; idx < cells.size(); ++idx) cur[cells[idx].component(axis + 1) - 1] += m[idx];
      for (int v = 0; v < n; ++v) worst = std::max(worst, std::abs(cur[v] - margin_targets[axis][v]));
    }
    for (const auto& s : stats) {
      double cur = 0.0;
      for (auto idx : s.cells) cur += m[idx];
      worst = std::max(worst, std::abs(cur - s.target));
    }
    return worst;
  };
  auto current_loglik = [&]() {
    return loglik(counts, FloatTensor::from_entries(n, m, Normalization::Unnormalized));
  };

  std::vector<bool> in_stat(cells.size());
  for (std::size_t iter = 1; iter <= options.max_iter; ++iter) {
    for (int axis = 0; axis < 3; ++axis) {
      std::vector<double> cur(n, 0.0);
      for (std::size_t idx = 0; idx < cells.size(); ++idx) cur[cells[idx].component(axis + 1) - 1] += m[idx];
      std::vector<double> factor(n, 0.0);
      for (int v = 0; v < n; ++v) {
        if (cur[v] > 0.0) factor[v] = margin_targets[axis][v] / cur[v];
        margin_params[axis][v] *= factor[v];
      }
      for (std::size_t idx = 0; idx < cells.size(); ++idx) m[idx] *= factor[cells[idx].component(axis + 1) - 1];
    }
    for (std::size_t s = 0; s < stats.size(); ++s) {
      std::fill(in_stat.begin(), in_stat.end(), false);
      double inside = 0.0, outside = 0.0;
      for (auto idx : stats[s].cells) in_stat[idx] = true;
      for (std::size_t idx = 0; idx < cells.size(); ++idx) (in_stat[idx] ? inside : outside) += m[idx];
      const double f_in = inside > 0.0 ? stats[s].target / inside : 0.0;
      const double f_out = outside > 0.0 ? std::max(0.0, 1.0 - stats[s].target) / outside : 0.0;
      for (std::size_t idx = 0; idx < cells.size(); ++idx) m[idx] *= in_stat[idx] ? f_in : f_out;
      if (f_out == 0.0 && f_in > 0.0) {
        infinite = true;
      } else if (f_out > 0.0) {
        gamma[s] *= f_in / f_out;
      }
    }
    const double total = std::accumulate(m.begin(), m.end(), 0.0);
    for (double& x : m) x /= total;
    result.iterations = iter;
    result.loglik_trace.push_back(current_loglik());
    if (gap() < tol) {
      result.converged = true;
      break;
    }
  }
  if (!result.converged) {
    result.warnings.push_back(std::string(to_string(ErrorCode::NotConverged)) + " after " +
                              std::to_string(result.iterations) + " sweeps");
  }
  result.fitted = FloatTensor::from_entries(n, m, Normalization::Unnormalized).normalize();
  result.loglik = loglik(counts, result.fitted);
  if (!infinite) {
    auto a = normalized(margin_params[0]), b = normalized(margin_params[1]), c = normalized(margin_params[2]);
    switch (family) {
      case Family::QI: result.params = QIParams<double>{a, b, c, gamma}; break;
      case Family::qI: result.params = QICommonParams<double>{a, b, c, gamma[0]}; break;
      default: result.params = PairwiseQIParams<double>{a, b, c, gamma[0], gamma[1], gamma[2]}; break;
    }
  }
  return result;
}

namespace {

// One latent summand: a weight times a fixed or fitted shape over the cells.
enum class Component { Independence, FreeDiagonal, UniformDiagonal, Slab12, Slab13, Slab23 };

std::vector<Component> components_of(Family family) {
  switch (family) {
    case Family::Mix: return {Component::Independence, Component::FreeDiagonal};
    case Family::mix: return {Component::Independence, Component::UniformDiagonal};
    case Family::pMix:
      return {Component::Independence, Component::Slab12, Component::Slab13, Component::Slab23,
              Component::UniformDiagonal};
    default: throw Error(ErrorCode::Unsupported, "EM fits Mix, mix and pMix");
  }
}

struct MixtureState {
  std::vector<double> weights;
  std::vector<double> a, b, c, d;
};

class Mixture {
 public:
  Mixture(const CountTensor& counts, Family family)
      : counts_(counts), family_(family), n_(counts.n()), cells_(all_cells(n_)), comps_(components_of(family)) {}

  std::size_t size() const { return comps_.size(); }

  double shape(std::size_t comp, const Cell& x, const MixtureState& s) const {
    const double nn = n_;
    switch (comps_[comp]) {
      case Component::Independence: return s.a[x.i - 1] * s.b[x.j - 1] * s.c[x.k - 1];
      case Component::FreeDiagonal: return x.is_diagonal() ? s.d[x.i - 1] : 0.0;
      case Component::UniformDiagonal: return x.is_diagonal() ? 1.0 / nn : 0.0;
      case Component::Slab12: return x.i == x.j ? 1.0 / (nn * nn) : 0.0;
      case Component::Slab13: return x.i == x.k ? 1.0 / (nn * nn) : 0.0;
      case Component::Slab23: return x.j == x.k ? 1.0 / (nn * nn) : 0.0;
    }
    return 0.0;
  }

  bool supports(std::size_t comp, const Cell& x) const {
    switch (comps_[comp]) {
      case Component::Independence: return true;
      case Component::FreeDiagonal:
      case Component::UniformDiagonal: return x.is_diagonal();
      case Component::Slab12: return x.i == x.j;
      case Component::Slab13: return x.i == x.k;
      case Component::Slab23: return x.j == x.k;
    }
    return false;
  }

  // responsibilities[cell][comp], zero rows for unobserved cells
  MixtureState m_step(const std::vector<std::vector<double>>& resp, const MixtureState& previous) const {
    MixtureState s = previous;
    const double total = static_cast<double>(counts_.total());
    s.weights.assign(comps_.size(), 0.0);
    std::vector<double> a(n_, 0.0), b(n_, 0.0), c(n_, 0.0), d(n_, 0.0);
    for (std::size_t idx = 0; idx < cells_.size(); ++idx) {
      const double nijk = static_cast<double>(counts_.entries()[idx]);
      if (nijk == 0.0) continue;
      const Cell& x = cells_[idx];
      for (std::size_t k = 0; k < comps_.size(); ++k) {
        const double w = nijk * resp[idx][k];
        s.weights[k] += w;
        if (comps_[k] == Component::Independence) {
          a[x.i - 1] += w;
          b[x.j - 1] += w;
          c[x.k - 1] += w;
        } else if (comps_[k] == Component::FreeDiagonal) {
          d[x.i - 1] += w;
        }
      }
    }
    for (double& w : s.weights) w /= total;
    if (s.weights[0] > 0.0) {
      s.a = normalized(a);
      s.b = normalized(b);
      s.c = normalized(c);
    }
    if (family_ == Family::Mix && s.weights[1] > 0.0) s.d = normalized(d);
    return s;
  }

  std::vector<std::vector<double>> e_step(const MixtureState& s) const {
    std::vector<std::vector<double>> resp(cells_.size(), std::vector<double>(comps_.size(), 0.0));
    for (std::size_t idx = 0; idx < cells_.size(); ++idx) {
      if (counts_.entries()[idx] == 0) continue;
      double p = 0.0;
      for (std::size_t k = 0; k < comps_.size(); ++k) {
        resp[idx][k] = s.weights[k] * shape(k, cells_[idx], s);
        p += resp[idx][k];
      }
      if (p > 0.0) {
        for (double& r : resp[idx]) r /= p;
      }
    }
    return resp;
  }

  std::vector<std::vector<double>> random_responsibilities(std::mt19937_64& rng) const {
    std::uniform_real_distribution<double> u(0.05, 1.0);
    std::vector<std::vector<double>> resp(cells_.size(), std::vector<double>(comps_.size(), 0.0));
    for (std::size_t idx = 0; idx < cells_.size(); ++idx) {
      double s = 0.0;
      for (std::size_t k = 0; k < comps_.size(); ++k) {
        if (supports(k, cells_[idx])) s += resp[idx][k] = u(rng);
      }
      for (double& r : resp[idx]) r /= s;
    }
    return resp;
  }

  MixtureState uniform_state() const {
    const std::vector<double> u(n_, 1.0 / n_);
    return MixtureState{std::vector<double>(comps_.size(), 1.0 / static_cast<double>(comps_.size())), u, u, u, u};
  }

  ModelParams<double> params(const MixtureState& s) const {
    const auto& w = s.weights;
    switch (family_) {
      case Family::Mix: return MixParams<double>{s.a, s.b, s.c, s.d, w[0]};
      case Family::mix: return MixUniformParams<double>{s.a, s.b, s.c, w[0]};
      default: return PairwiseMixParams<double>{s.a, s.b, s.c, w[0], w[1], w[2], w[3], w[4]};
    }
  }

  FloatTensor tensor(const MixtureState& s) const {
    std::vector<double> p(cells_.size(), 0.0);
    for (std::size_t idx = 0; idx < cells_.size(); ++idx) {
      for (std::size_t k = 0; k < comps_.size(); ++k) p[idx] += s.weights[k] * shape(k, cells_[idx], s);
    }
    return FloatTensor::from_entries(n_, std::move(p), Normalization::Unnormalized);
  }

 private:
  const CountTensor& counts_;
  Family family_;
  int n_;
  std::vector<Cell> cells_;
  std::vector<Component> comps_;
};

}  // namespace

FitResult em_fit(const CountTensor& counts, Family family, const FitOptions& options) {
  const Mixture mixture(counts, family);
  const double tol = options.tol > 0.0 ? options.tol : kEmTolerance;
  FitResult best;
  best.family = family;
  best.loglik = -std::numeric_limits<double>::infinity();
  bool monotone = true;
  const int restarts = std::max(1, options.restarts);
  for (int r = 0; r < restarts; ++r) {
    std::seed_seq seq{static_cast<std::uint32_t>(options.seed), static_cast<std::uint32_t>(options.seed >> 32),
                      static_cast<std::uint32_t>(r)};
    std::mt19937_64 rng(seq);
    MixtureState state = mixture.m_step(mixture.random_responsibilities(rng), mixture.uniform_state());
    std::vector<double> trace{loglik(counts, mixture.tensor(state))};
    bool converged = false;
    std::size_t iter = 0;
    while (iter < options.max_iter) {
      ++iter;
      state = mixture.m_step(mixture.e_step(state), state);
      const double ll = loglik(counts, mixture.tensor(state));
      const double prev = trace.back();
      trace.push_back(ll);
      if (ll < prev - 1e-12 * std::max(1.0, std::abs(prev))) monotone = false;
      if (ll - prev < tol) {
        converged = true;
        break;
      }
    }
    if (trace.back() > best.loglik) {
      best.params = mixture.params(state);
      best.fitted = mixture.tensor(state).normalize();
      best.loglik = trace.back();
      best.iterations = iter;
      best.converged = converged;
      best.loglik_trace = std::move(trace);
    }
  }
  best.monotone = monotone;
  if (!monotone) best.warnings.push_back("loglik decreased during an EM run");
  if (!best.converged) {
    best.warnings.push_back(std::string(to_string(ErrorCode::NotConverged)) + " after " +
                            std::to_string(best.iterations) + " iterations");
  }
  best.loglik = loglik(counts, best.fitted);
  return best;
}

FitResult fit(const CountTensor& counts, Family family, const FitOptions& options) {
  if (family == Family::QI || family == Family::qI || family == Family::pQI) {
    return ipf_fit(counts, family, options);
  }
  return em_fit(counts, family, options);
}

}  // namespace agreetensor
