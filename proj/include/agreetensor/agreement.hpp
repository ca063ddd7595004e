#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "agreetensor/models.hpp"
#include "agreetensor/tensor.hpp"

namespace agreetensor {

template <class T>
struct KappaTriple {
  T kappa12{}, kappa13{}, kappa23{};
  bool operator==(const KappaTriple&) const = default;
};

/// Cohen's kappa of a two-way probability table:
///   (sum_i P_ii - sum_i P_{i+} P_{+i}) / (1 - sum_i P_{i+} P_{+i}).
/// Throws DegenerateChanceError when the chance term equals 1.
template <class T>
T cohen_kappa(const TwoWayTable<T>& table) {
  T observed = T(0), chance = T(0);
  for (int i = 1; i <= table.n(); ++i) {
    observed += table(i, i);
    chance += table.row_sum(i) * table.col_sum(i);
  }
  const T denom = T(1) - chance;
  if (ScalarTraits<T>::is_zero(denom)) throw DegenerateChanceError("");
  return (observed - chance) / denom;
}

/// Kappa of each two-way marginal: 12 sums out rater 3, 13 sums out rater 2, 23 rater 1.
template <class T>
KappaTriple<T> pairwise_kappas(const Tensor<T>& p) {
  auto one = [&](int summed_axis, const char* pair) {
    try {
      return cohen_kappa(marginalize(p, summed_axis));
    } catch (const DegenerateChanceError&) {
      throw DegenerateChanceError(pair);
    }
  };
  return KappaTriple<T>{one(3, "12"), one(2, "13"), one(1, "23")};
}

/// Closed form for pairwise quasi-independence with uniform margins a = b = c = 1/n.
/// Shared denominator T = g12 g13 g23 + (n-1)(g12 + g13 + g23) + (n-1)(n-2); the
/// numerator of kappa_rs is g12 g13 g23 + (n-1) g_rs - (other two gammas) - n + 2.
template <class T>
KappaTriple<T> kappa_pqi_uniform(int n, const T& g12, const T& g13, const T& g23) {
  if (n < 2) throw Error(ErrorCode::InvalidParams, "need at least 2 categories");
  if (ScalarTraits<T>::is_negative(g12) || ScalarTraits<T>::is_negative(g13) ||
      ScalarTraits<T>::is_negative(g23)) {
    throw Error(ErrorCode::InvalidParams, "gammas must be non-negative");
  }
  const T m = T(n - 1);
  const T prod = g12 * g13 * g23;
  const T denom = prod + m * (g12 + g13 + g23) + m * T(n - 2);
  if (ScalarTraits<T>::is_zero(denom)) throw Error(ErrorCode::ZeroMass, "T(gammas) = 0");
  auto numer = [&](const T& own, const T& x, const T& y) -> T {
    return prod + m * own - x - y - T(n) + T(2);
  };
  return KappaTriple<T>{numer(g12, g13, g23) / denom, numer(g13, g12, g23) / denom,
                        numer(g23, g12, g13) / denom};
}

/// Closed form for the pairwise mixture with uniform margins: kappa_rs = alpha_rs + alpha_123.
/// alpha_0 is implied as 1 minus the rest and must be non-negative.
template <class T>
KappaTriple<T> kappa_pmix_uniform(const T& a12, const T& a13, const T& a23, const T& a123) {
  for (const T* x : {&a12, &a13, &a23, &a123}) {
    if (ScalarTraits<T>::is_negative(*x)) {
      throw Error(ErrorCode::InvalidParams, "alpha coordinates must be non-negative");
    }
  }
  const T a0 = T(1) - a12 - a13 - a23 - a123;
  if (ScalarTraits<T>::is_negative(a0)) {
    if constexpr (ScalarTraits<T>::exact) {
      throw Error(ErrorCode::InvalidParams, "alphas sum to more than 1");
    } else if (a0 < -ScalarTraits<double>::sum_tolerance) {
      throw Error(ErrorCode::InvalidParams, "alphas sum to more than 1");
    }
  }
  return KappaTriple<T>{a12 + a123, a13 + a123, a23 + a123};
}

// ---------------------------------------------------------------------------------------
// Sweeps

/// Grid for a kappa-map sweep over pQI gammas or pMix alphas at fixed margins.
struct SweepGrid {
  Family family = Family::pQI;  // pQI or pMix
  int n = 2;
  std::vector<double> a, b, c;
  // pQI: the value list used on every gamma axis.
  std::vector<double> gamma_values;
  // pMix: alphas are multiples of 1/alpha_divisions over the 5-simplex.
  int alpha_divisions = 10;

  /// gamma in {10^(t/10) : t = 0..20} on each axis, uniform margins.
  static SweepGrid pqi_default(int n);
  /// alpha step 1/10 over the feasible simplex, uniform margins.
  static SweepGrid pmix_default(int n);

  void validate() const;
  std::size_t size() const;
};

struct SweepRecord {
  // pQI: {g12, g13, g23}; pMix: {a0, a12, a13, a23, a123}
  std::vector<double> params;
  std::optional<KappaTriple<double>> kappas;
  std::string error;  // empty on success
};

/// Evaluates every grid point on the float backend. Records are in lexicographic grid
/// order whatever the thread count; a DegenerateChance point becomes a record with
/// `error` set. `threads` = 0 picks the AGREETENSOR_THREADS / hardware default.
std::vector<SweepRecord> sweep(const SweepGrid& grid, unsigned threads = 0);

/// CSV with header g12,g13,g23,kappa12,kappa13,kappa23,error (pQI) or
/// a0,a12,a13,a23,a123,kappa12,kappa13,kappa23,error (pMix). Values use 10 significant
/// digits; magnitudes below 1e-12 print as 0.
void write_sweep_csv(std::ostream& out, Family family, const std::vector<SweepRecord>& records);

/// The 10-significant-digit decimal rendering used in sweep CSVs.
std::string format_decimal(double value);

}  // namespace agreetensor
