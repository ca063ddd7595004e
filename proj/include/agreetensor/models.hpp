#pragma once

#include <cstdint>
#include <string_view>
#include <variant>
#include <vector>

#include "agreetensor/error.hpp"
#include "agreetensor/scalar.hpp"
#include "agreetensor/tensor.hpp"

namespace agreetensor {

/// The six rater-agreement families. Canonical text names are "QI", "Mix", "qI", "mix",
/// "pQI" and "pMix"; the case distinguishes QI from qI and Mix from mix.
enum class Family { QI, Mix, qI, mix, pQI, pMix };

const char* to_string(Family f);

/// Exact canonical names are matched first; "pqi"/"pmix" are also accepted in any case
/// since they are unambiguous. Throws Parse on anything else.
Family parse_family(std::string_view text);

// Parameter sets. Vectors a, b, c (and d) have one coordinate per category.

/// Quasi-independence with one agreement weight per category.
template <class T>
struct QIParams {
  std::vector<T> a, b, c, gamma;
};

/// Independence mixed with a diagonal distribution d.
template <class T>
struct MixParams {
  std::vector<T> a, b, c, d;
  T alpha = T(1);
};

/// Quasi-independence with a single agreement weight shared by every diagonal cell.
template <class T>
struct QICommonParams {
  std::vector<T> a, b, c;
  T gamma = T(1);
};

/// Independence mixed with the uniform diagonal (d_i = 1/n).
template <class T>
struct MixUniformParams {
  std::vector<T> a, b, c;
  T alpha = T(1);
};

/// Pairwise quasi-independence: one weight per rater pair; diagonal cells get the product.
template <class T>
struct PairwiseQIParams {
  std::vector<T> a, b, c;
  T gamma12 = T(1), gamma13 = T(1), gamma23 = T(1);
};

/// Independence mixed with the three pairwise-agreement slabs and the diagonal.
template <class T>
struct PairwiseMixParams {
  std::vector<T> a, b, c;
  T alpha0 = T(1), alpha12 = T(0), alpha13 = T(0), alpha23 = T(0), alpha123 = T(0);
};

template <class T>
using ModelParams = std::variant<QIParams<T>, MixParams<T>, QICommonParams<T>,
                                 MixUniformParams<T>, PairwiseQIParams<T>, PairwiseMixParams<T>>;

template <class T>
Family family_of(const ModelParams<T>& params) {
  return static_cast<Family>(params.index());
}

template <class T>
int dimension(const ModelParams<T>& params) {
  return std::visit([](const auto& p) { return static_cast<int>(p.a.size()); }, params);
}

namespace detail {

template <class T>
void require(bool ok, const char* what) {
  if (!ok) throw Error(ErrorCode::InvalidParams, what);
}

template <class T>
void check_nonnegative(const std::vector<T>& v, const char* name) {
  for (const T& x : v) {
    if (ScalarTraits<T>::is_negative(x)) {
      throw Error(ErrorCode::InvalidParams, std::string(name) + " has a negative coordinate");
    }
  }
}

template <class T>
void check_simplex(const std::vector<T>& v, const char* name) {
  check_nonnegative(v, name);
  T s = T(0);
  for (const T& x : v) s += x;
  if (!ScalarTraits<T>::is_one(s)) {
    throw Error(ErrorCode::InvalidParams, std::string(name) + " does not sum to 1");
  }
}

template <class T>
void check_unit(const T& x, const char* name) {
  if (ScalarTraits<T>::is_negative(x) || ScalarTraits<T>::is_negative(T(1) - x)) {
    throw Error(ErrorCode::InvalidParams, std::string(name) + " outside [0,1]");
  }
}

template <class T>
void check_margins(const std::vector<T>& a, const std::vector<T>& b, const std::vector<T>& c,
                   bool simplex) {
  if (a.size() < 2) throw Error(ErrorCode::InvalidParams, "need at least 2 categories");
  if (b.size() != a.size() || c.size() != a.size()) {
    throw Error(ErrorCode::InvalidParams, "a, b, c must have equal length");
  }
  if (simplex) {
    check_simplex(a, "a");
    check_simplex(b, "b");
    check_simplex(c, "c");
  } else {
    check_nonnegative(a, "a");
    check_nonnegative(b, "b");
    check_nonnegative(c, "c");
  }
}

}  // namespace detail

/// Throws InvalidParams when a non-negativity, length or simplex constraint fails.
template <class T>
void validate(const ModelParams<T>& params) {
  using namespace detail;
  std::visit(
      [](const auto& p) {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, QIParams<T>>) {
          check_margins(p.a, p.b, p.c, false);
          if (p.gamma.size() != p.a.size()) {
            throw Error(ErrorCode::InvalidParams, "gamma must have one entry per category");
          }
          check_nonnegative(p.gamma, "gamma");
        } else if constexpr (std::is_same_v<P, MixParams<T>>) {
          check_margins(p.a, p.b, p.c, true);
          if (p.d.size() != p.a.size()) {
            throw Error(ErrorCode::InvalidParams, "d must have one entry per category");
          }
          check_simplex(p.d, "d");
          check_unit(p.alpha, "alpha");
        } else if constexpr (std::is_same_v<P, QICommonParams<T>>) {
          check_margins(p.a, p.b, p.c, false);
          require<T>(!ScalarTraits<T>::is_negative(p.gamma), "gamma is negative");
        } else if constexpr (std::is_same_v<P, MixUniformParams<T>>) {
          check_margins(p.a, p.b, p.c, true);
          check_unit(p.alpha, "alpha");
        } else if constexpr (std::is_same_v<P, PairwiseQIParams<T>>) {
          check_margins(p.a, p.b, p.c, false);
          require<T>(!ScalarTraits<T>::is_negative(p.gamma12) &&
                         !ScalarTraits<T>::is_negative(p.gamma13) &&
                         !ScalarTraits<T>::is_negative(p.gamma23),
                     "pairwise gamma is negative");
        } else {
          check_margins(p.a, p.b, p.c, true);
          check_simplex(std::vector<T>{p.alpha0, p.alpha12, p.alpha13, p.alpha23, p.alpha123},
                        "alpha");
        }
      },
      params);
}

namespace detail {

template <class T>
Tensor<T> normalize_weights(int n, std::vector<T> weights) {
  T total = T(0);
  for (const T& w : weights) total += w;
  if (ScalarTraits<T>::is_zero(total)) {
    throw Error(ErrorCode::ZeroMass, "unnormalized model total is zero");
  }
  for (T& w : weights) w /= total;
  auto t = Tensor<T>::from_entries(n, std::move(weights), Normalization::Unnormalized);
  return t;
}

}  // namespace detail

/// Materializes the probability tensor of a parameter point. The zeta-normalized families
/// (QI, qI, pQI) are divided by their unnormalized total; the mixtures sum to 1 as given.
template <class T>
Tensor<T> materialize(const ModelParams<T>& params) {
  validate(params);
  const int n = dimension(params);
  const T n_inv = T(1) / T(n);
  const T n2_inv = n_inv * n_inv;
  std::vector<T> w;
  w.reserve(static_cast<std::size_t>(n) * n * n);
  std::visit(
      [&](const auto& p) {
        using P = std::decay_t<decltype(p)>;
        for (const Cell& c : all_cells(n)) {
          T base = p.a[c.i - 1] * p.b[c.j - 1] * p.c[c.k - 1];
          const CellClass cls = cell_class(c);
          if constexpr (std::is_same_v<P, QIParams<T>>) {
            if (cls == CellClass::AllEqual) base *= p.gamma[c.i - 1];
          } else if constexpr (std::is_same_v<P, MixParams<T>>) {
            base *= p.alpha;
            if (cls == CellClass::AllEqual) base += (T(1) - p.alpha) * p.d[c.i - 1];
          } else if constexpr (std::is_same_v<P, QICommonParams<T>>) {
            if (cls == CellClass::AllEqual) base *= p.gamma;
          } else if constexpr (std::is_same_v<P, MixUniformParams<T>>) {
            base *= p.alpha;
            if (cls == CellClass::AllEqual) base += (T(1) - p.alpha) * n_inv;
          } else if constexpr (std::is_same_v<P, PairwiseQIParams<T>>) {
            switch (cls) {
              case CellClass::AllEqual: base *= p.gamma12 * p.gamma13 * p.gamma23; break;
              case CellClass::Eq12: base *= p.gamma12; break;
              case CellClass::Eq13: base *= p.gamma13; break;
              case CellClass::Eq23: base *= p.gamma23; break;
              case CellClass::AllDistinct: break;
            }
          } else {
            base *= p.alpha0;
            if (c.i == c.j) base += p.alpha12 * n2_inv;
            if (c.i == c.k) base += p.alpha13 * n2_inv;
            if (c.j == c.k) base += p.alpha23 * n2_inv;
            if (cls == CellClass::AllEqual) base += p.alpha123 * n_inv;
          }
          w.push_back(std::move(base));
        }
      },
      params);
  const Family f = family_of(params);
  if (f == Family::QI || f == Family::qI || f == Family::pQI) {
    return detail::normalize_weights(n, std::move(w));
  }
  if constexpr (ScalarTraits<T>::exact) {
    return Tensor<T>::from_entries(n, std::move(w), Normalization::Require);
  } else {
    return Tensor<T>::from_entries(n, std::move(w), Normalization::Unnormalized);
  }
}

template <class T>
std::vector<double> to_float_vector(const std::vector<T>& v) {
  std::vector<double> out;
  out.reserve(v.size());
  for (const T& x : v) out.push_back(to_double(x));
  return out;
}

/// Rational -> float conversion of a parameter point. The reverse is deliberately absent.
ModelParams<double> to_float(const ModelParams<Rational>& params);

struct SampleOptions {
  Rational gamma_lo = Rational(1, 10);
  Rational gamma_hi = Rational(10);
  int grid_denominator = 24;
  // Strictly positive simplex coordinates and alpha in (0, 1]. Boundary draws allow zeros.
  bool interior = true;
};

/// Seeded random parameter point. Simplex vectors are exact rationals with denominator
/// `grid_denominator` (raised to n when smaller) and exact sum 1; gammas lie on the grid
/// gamma_lo + (gamma_hi - gamma_lo) * u / grid_denominator.
ModelParams<Rational> sample_params(Family family, int n, std::uint64_t seed,
                                    const SampleOptions& options = {});

}  // namespace agreetensor
