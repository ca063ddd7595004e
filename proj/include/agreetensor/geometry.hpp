#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "agreetensor/models.hpp"
#include "agreetensor/tensor.hpp"

namespace agreetensor {

/// Entrywise product of two projective points, left unnormalized. Throws NotDefined when
/// every coordinate product is zero.
template <class T>
Tensor<T> hadamard(const Tensor<T>& p, const Tensor<T>& q) {
  if (p.n() != q.n()) throw Error(ErrorCode::DimensionMismatch, "tensors differ in size");
  std::vector<T> out;
  out.reserve(p.entries().size());
  bool any = false;
  for (std::size_t idx = 0; idx < p.entries().size(); ++idx) {
    T v = p.entries()[idx] * q.entries()[idx];
    any = any || !ScalarTraits<T>::is_zero(v);
    out.push_back(std::move(v));
  }
  if (!any) throw Error(ErrorCode::NotDefined, "Hadamard product of points with disjoint support");
  return Tensor<T>::from_entries(p.n(), std::move(out), Normalization::Unnormalized);
}

enum class LinearVariety { H, Hhat, Htilde, Diag };

const char* to_string(LinearVariety v);
LinearVariety parse_linear_variety(std::string_view text);

/// P[lhs] - P[rhs] = 0, or P[lhs] = 0 when rhs is empty.
struct LinearEquation {
  Cell lhs;
  std::optional<Cell> rhs;
};

/// H: every non-diagonal coordinate equal. Hhat: H plus an equal diagonal.
/// Htilde: equal coordinates inside each cell class (diagonal, i=j, i=k, j=k, all distinct).
/// Diag: every non-diagonal coordinate zero. Equalities are listed against the first cell
/// of their class, which cuts out the same set as the all-pairs system.
std::vector<LinearEquation> variety_equations(LinearVariety id, int n);

/// Exact on rationals; on floats each equation must hold within 1e-10 of the largest entry.
template <class T>
bool variety_membership(const Tensor<T>& p, LinearVariety id) {
  T scale = T(0);
  for (const T& e : p.entries()) {
    if (scale < e) scale = e;
  }
  auto same = [&](const T& x, const T& y) {
    if constexpr (ScalarTraits<T>::exact) {
      return x == y;
    } else {
      return std::abs(x - y) <= ScalarTraits<double>::relative_tolerance * scale;
    }
  };
  for (const LinearEquation& eq : variety_equations(id, p.n())) {
    const T& lhs = p(eq.lhs.i, eq.lhs.j, eq.lhs.k);
    if (!same(lhs, eq.rhs ? p(eq.rhs->i, eq.rhs->j, eq.rhs->k) : T(0))) return false;
  }
  return true;
}

/// Unnormalized a_i b_j c_k.
template <class T>
Tensor<T> independence_point(const std::vector<T>& a, const std::vector<T>& b,
                             const std::vector<T>& c) {
  detail::check_margins(a, b, c, false);
  return Tensor<T>::generate(
      static_cast<int>(a.size()),
      [&](Cell x) -> T { return a[x.i - 1] * b[x.j - 1] * c[x.k - 1]; },
      Normalization::Unnormalized);
}

/// The H-points whose Hadamard product with the independence point gives the QI-type
/// families: gamma weights where the model puts them, 1 elsewhere.
template <class T>
Tensor<T> h_point(const QIParams<T>& p) {
  return Tensor<T>::generate(
      static_cast<int>(p.gamma.size()),
      [&](Cell x) -> T { return x.is_diagonal() ? p.gamma[x.i - 1] : T(1); },
      Normalization::Unnormalized);
}

template <class T>
Tensor<T> h_point(const QICommonParams<T>& p) {
  return Tensor<T>::generate(
      static_cast<int>(p.a.size()), [&](Cell x) -> T { return x.is_diagonal() ? p.gamma : T(1); },
      Normalization::Unnormalized);
}

template <class T>
Tensor<T> h_point(const PairwiseQIParams<T>& p) {
  return Tensor<T>::generate(
      static_cast<int>(p.a.size()),
      [&](Cell x) -> T {
        switch (cell_class(x)) {
          case CellClass::AllEqual: return p.gamma12 * p.gamma13 * p.gamma23;
          case CellClass::Eq12: return p.gamma12;
          case CellClass::Eq13: return p.gamma13;
          case CellClass::Eq23: return p.gamma23;
          default: return T(1);
        }
      },
      Normalization::Unnormalized);
}

/// Equal positive diagonal, zero elsewhere (1/n on the diagonal once normalized).
template <class T>
bool is_perfect_agreement(const Tensor<T>& p) {
  const T& first = p(1, 1, 1);
  if (ScalarTraits<T>::is_zero(first)) return false;
  for (const Cell& c : all_cells(p.n())) {
    const T& v = p(c.i, c.j, c.k);
    if (c.is_diagonal() ? !ScalarTraits<T>::equal(v, first) : !ScalarTraits<T>::is_zero(v)) {
      return false;
    }
  }
  return true;
}

/// `reason` is empty for members, otherwise one of "zero", "support", "equation" or
/// "limit_point" (the perfect-agreement tensor: in the closure of the QI-type families,
/// not reached by any parameter value).
struct Membership {
  bool member = false;
  std::string reason;
};

namespace detail {

// Integer basis of {u : u^T M = 0} for a 0/1 design matrix M given by rows.
std::vector<std::vector<long>> left_kernel_basis(const std::vector<std::vector<int>>& rows);

// Support pattern check for the QI-type families; fills `design` with one row per
// nonzero cell.
bool toric_support(Family family, int n, const std::vector<bool>& nonzero,
                   std::vector<Cell>& cells, std::vector<std::vector<int>>& design);

inline Rational power(const Rational& x, unsigned long e) {
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), x.get_num_mpz_t(), e);
  mpz_pow_ui(den.get_mpz_t(), x.get_den_mpz_t(), e);
  return Rational(num, den);
}

}  // namespace detail

/// Membership in the parameterized set of QI, qI or pQI (projectively, so the overall
/// scale is ignored). Zero entries are matched against the support patterns the
/// parameters can produce; the nonzero entries must then satisfy every binomial of the
/// log-linear lattice. Throws Unsupported for the mixture families.
template <class T>
Membership toric_membership(const Tensor<T>& p, Family family) {
  if (family != Family::QI && family != Family::qI && family != Family::pQI) {
    throw Error(ErrorCode::Unsupported, "membership is implemented for QI, qI and pQI");
  }
  if (is_perfect_agreement(p)) return {false, "limit_point"};
  std::vector<bool> nonzero;
  bool any = false;
  for (const T& e : p.entries()) {
    nonzero.push_back(!ScalarTraits<T>::is_zero(e));
    any = any || nonzero.back();
  }
  if (!any) return {false, "zero"};
  std::vector<Cell> cells;
  std::vector<std::vector<int>> design;
  if (!detail::toric_support(family, p.n(), nonzero, cells, design)) return {false, "support"};
  for (const auto& u : detail::left_kernel_basis(design)) {
    if constexpr (ScalarTraits<T>::exact) {
      Rational plus(1), minus(1);
      for (std::size_t r = 0; r < cells.size(); ++r) {
        if (u[r] == 0) continue;
        const Rational& v = p(cells[r].i, cells[r].j, cells[r].k);
        if (u[r] > 0) {
          plus *= detail::power(v, static_cast<unsigned long>(u[r]));
        } else {
          minus *= detail::power(v, static_cast<unsigned long>(-u[r]));
        }
      }
      if (plus != minus) return {false, "equation"};
    } else {
      double sum = 0.0, scale = 1.0;
      for (std::size_t r = 0; r < cells.size(); ++r) {
        if (u[r] == 0) continue;
        const double term = static_cast<double>(u[r]) * std::log(p(cells[r].i, cells[r].j, cells[r].k));
        sum += term;
        scale += std::abs(term);
      }
      if (std::abs(sum) > 1e-9 * scale) return {false, "equation"};
    }
  }
  return {true, ""};
}

/// Rewrites an interior Mix point as a QI point with the same tensor:
/// a = alpha * a_bar, b = b_bar, c = c_bar, gamma_i = 1 + (1 - alpha) d_i / (alpha a_i b_i c_i).
/// Throws BoundaryPoint when alpha or any coordinate of a, b, c, d is zero.
template <class T>
QIParams<T> mix_to_qi(const MixParams<T>& m) {
  validate(ModelParams<T>(m));
  if (ScalarTraits<T>::is_zero(m.alpha)) throw Error(ErrorCode::BoundaryPoint, "alpha = 0");
  for (const auto* v : {&m.a, &m.b, &m.c, &m.d}) {
    for (const T& x : *v) {
      if (ScalarTraits<T>::is_zero(x)) {
        throw Error(ErrorCode::BoundaryPoint, "a zero coordinate in a, b, c or d");
      }
    }
  }
  QIParams<T> q;
  q.b = m.b;
  q.c = m.c;
  for (std::size_t i = 0; i < m.a.size(); ++i) {
    q.a.push_back(m.alpha * m.a[i]);
    q.gamma.push_back(T(1) + (T(1) - m.alpha) * m.d[i] / (m.alpha * m.a[i] * m.b[i] * m.c[i]));
  }
  return q;
}

enum class Direction { MixNotInQI, QINotInMix };

const char* to_string(Direction d);
Direction parse_direction(std::string_view text);

/// A tensor in one model but not the other, with a plain-text deduction. Each witness line
/// is "P[i,j,k] = v => step" or "=> step"; the stated entry equations are re-checkable.
struct Counterexample {
  Direction direction;
  ExactTensor tensor;
  std::vector<std::string> witness;
};

/// MixNotInQI: the uniform diagonal tensor (alpha = 0). QINotInMix: QI with a = b = c = 1,
/// gamma_1 = 0 and the other gammas 1.
Counterexample boundary_counterexample(Direction direction, int n);

/// QI tensors with a positive diagonal are positive everywhere, so a zero elsewhere
/// excludes P from QI.
bool excluded_from_qi(const ExactTensor& p);

/// A Mix tensor with P111 = 0 has alpha a1 b1 c1 = 0, which zeroes one of P122, P212,
/// P221; so P111 = 0 with those three positive excludes P from Mix.
bool excluded_from_mix(const ExactTensor& p);

/// Re-evaluates every stated entry equation and reruns the zero-pattern exclusion.
bool check_witness(const Counterexample& example);

}  // namespace agreetensor
