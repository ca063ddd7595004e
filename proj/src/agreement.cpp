#include "agreetensor/agreement.hpp"

#include <cmath>
#include <cstdio>

#include "agreetensor/parallel.hpp"

namespace agreetensor {

SweepGrid SweepGrid::pqi_default(int n) {
  SweepGrid g;
  g.family = Family::pQI;
  g.n = n;
  g.a = g.b = g.c = std::vector<double>(static_cast<std::size_t>(n), 1.0 / n);
  for (int t = 0; t <= 20; ++t) g.gamma_values.push_back(std::pow(10.0, t / 10.0));
  return g;
}

SweepGrid SweepGrid::pmix_default(int n) {
  SweepGrid g;
  g.family = Family::pMix;
  g.n = n;
  g.a = g.b = g.c = std::vector<double>(static_cast<std::size_t>(n), 1.0 / n);
  g.alpha_divisions = 10;
  return g;
}

void SweepGrid::validate() const {
  if (family != Family::pQI && family != Family::pMix) {
    throw Error(ErrorCode::Unsupported, "sweeps are defined for pQI and pMix only");
  }
  if (n < 2) throw Error(ErrorCode::InvalidParams, "need at least 2 categories");
  const auto un = static_cast<std::size_t>(n);
  if (a.size() != un || b.size() != un || c.size() != un) {
    throw Error(ErrorCode::InvalidParams, "margins must have n coordinates");
  }
  if (family == Family::pQI) {
    if (gamma_values.empty()) throw Error(ErrorCode::InvalidParams, "empty gamma grid");
    for (double g : gamma_values) {
      if (!(g >= 0.0)) throw Error(ErrorCode::InvalidParams, "gamma grid value is negative");
    }
    detail::check_margins(a, b, c, false);
  } else {
    if (alpha_divisions < 1) throw Error(ErrorCode::InvalidParams, "alpha divisions < 1");
    detail::check_margins(a, b, c, true);
  }
}

std::size_t SweepGrid::size() const {
  if (family == Family::pQI) {
    const std::size_t m = gamma_values.size();
    return m * m * m;
  }
  // compositions of D into 5 non-negative parts
  const std::size_t d = static_cast<std::size_t>(alpha_divisions);
  return (d + 4) * (d + 3) * (d + 2) * (d + 1) / 24;
}

namespace {

std::vector<std::vector<double>> grid_points(const SweepGrid& grid) {
  std::vector<std::vector<double>> points;
  points.reserve(grid.size());
  if (grid.family == Family::pQI) {
    for (double g12 : grid.gamma_values)
      for (double g13 : grid.gamma_values)
        for (double g23 : grid.gamma_values) points.push_back({g12, g13, g23});
    return points;
  }
  const int d = grid.alpha_divisions;
  const double dd = d;
  for (int t0 = 0; t0 <= d; ++t0)
    for (int t1 = 0; t0 + t1 <= d; ++t1)
      for (int t2 = 0; t0 + t1 + t2 <= d; ++t2)
        for (int t3 = 0; t0 + t1 + t2 + t3 <= d; ++t3) {
          const int t4 = d - t0 - t1 - t2 - t3;
          points.push_back({t0 / dd, t1 / dd, t2 / dd, t3 / dd, t4 / dd});
        }
  return points;
}

}  // namespace

std::vector<SweepRecord> sweep(const SweepGrid& grid, unsigned threads) {
  grid.validate();
  const auto points = grid_points(grid);
  std::vector<SweepRecord> records(points.size());
  parallel_for(points.size(), threads, [&](std::size_t idx) {
    const auto& v = points[idx];
    SweepRecord rec;
    rec.params = v;
    ModelParams<double> params;
    if (grid.family == Family::pQI) {
      params = PairwiseQIParams<double>{grid.a, grid.b, grid.c, v[0], v[1], v[2]};
    } else {
      params = PairwiseMixParams<double>{grid.a, grid.b, grid.c, v[0], v[1], v[2], v[3], v[4]};
    }
    try {
      rec.kappas = pairwise_kappas(materialize(params));
    } catch (const DegenerateChanceError& e) {
      rec.error = "DegenerateChance(" + e.pair() + ")";
    } catch (const Error& e) {
      rec.error = std::string(to_string(e.code()));
    }
    records[idx] = std::move(rec);
  });
  return records;
}

std::string format_decimal(double value) {
  if (std::abs(value) < 1e-12) return "0";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", value);
  return buf;
}

void write_sweep_csv(std::ostream& out, Family family, const std::vector<SweepRecord>& records) {
  if (family == Family::pQI) {
    out << "g12,g13,g23,kappa12,kappa13,kappa23,error\n";
  } else {
    out << "a0,a12,a13,a23,a123,kappa12,kappa13,kappa23,error\n";
  }
  for (const auto& r : records) {
    for (double p : r.params) out << format_decimal(p) << ',';
    if (r.kappas) {
      out << format_decimal(r.kappas->kappa12) << ',' << format_decimal(r.kappas->kappa13) << ','
          << format_decimal(r.kappas->kappa23) << ',';
    } else {
      out << ",,,";
    }
    out << r.error << '\n';
  }
}

}  // namespace agreetensor
