#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "agreetensor/error.hpp"
#include "agreetensor/scalar.hpp"

namespace agreetensor {

/// A 1-based cell (i, j, k) of an n x n x n tensor; i, j, k are the categories
/// assigned by raters 1, 2 and 3.
struct Cell {
  int i = 1;
  int j = 1;
  int k = 1;

  auto operator<=>(const Cell&) const = default;
  bool is_diagonal() const { return i == j && j == k; }
  int max_index() const { return std::max(i, std::max(j, k)); }
  int component(int axis) const { return axis == 1 ? i : (axis == 2 ? j : k); }
};

/// Index pattern of a cell. Eq12 is i = j != k, Eq13 is i = k != j, Eq23 is j = k != i.
enum class CellClass { AllEqual, Eq12, Eq13, Eq23, AllDistinct };

const char* to_string(CellClass c);

/// Classifies without range checks.
constexpr CellClass cell_class(Cell c) {
  if (c.i == c.j && c.j == c.k) return CellClass::AllEqual;
  if (c.i == c.j) return CellClass::Eq12;
  if (c.i == c.k) return CellClass::Eq13;
  if (c.j == c.k) return CellClass::Eq23;
  return CellClass::AllDistinct;
}

/// Throws IndexOutOfRange unless 1 <= i, j, k <= n.
CellClass classify_cell(int n, Cell c);

/// Closed-form number of cells of the class in {1..n}^3.
std::size_t class_cardinality(CellClass c, int n);

/// All n^3 cells in lexicographic order (the storage order of Tensor).
std::vector<Cell> all_cells(int n);

inline std::size_t flat_index(int n, Cell c) {
  return (static_cast<std::size_t>(c.i - 1) * n + static_cast<std::size_t>(c.j - 1)) * n +
         static_cast<std::size_t>(c.k - 1);
}

void check_cell(int n, Cell c);

enum class Normalization { Require, Unnormalized };

template <class T>
class TwoWayTable;

/// An immutable n x n x n array of non-negative numbers. Constructed either as a
/// probability tensor (total checked to be 1) or through the `Unnormalized` path used
/// for raw counts and projective points.
template <class T>
class Tensor {
 public:
  static Tensor from_entries(int n, std::vector<T> entries,
                             Normalization mode = Normalization::Require) {
    if (n < 1) throw Error(ErrorCode::InvalidTensor, "category count must be positive");
    const std::size_t expected = static_cast<std::size_t>(n) * n * n;
    if (entries.size() != expected) {
      throw Error(ErrorCode::DimensionMismatch,
                  "expected " + std::to_string(expected) + " entries, got " +
                      std::to_string(entries.size()));
    }
    T total = T(0);
    for (const T& e : entries) {
      if (ScalarTraits<T>::is_negative(e)) {
        throw Error(ErrorCode::InvalidTensor, "negative entry");
      }
      total += e;
    }
    if (mode == Normalization::Require && !ScalarTraits<T>::is_one(total)) {
      throw Error(ErrorCode::InvalidTensor, "entries do not sum to 1");
    }
    Tensor t;
    t.n_ = n;
    t.data_ = std::move(entries);
    t.normalized_ = ScalarTraits<T>::is_one(total);
    return t;
  }

  template <class F>
  static Tensor generate(int n, F&& f, Normalization mode = Normalization::Require) {
    std::vector<T> entries;
    entries.reserve(static_cast<std::size_t>(n) * n * n);
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j)
        for (int k = 1; k <= n; ++k) entries.push_back(T(f(Cell{i, j, k})));
    return from_entries(n, std::move(entries), mode);
  }

  int n() const { return n_; }
  bool normalized() const { return normalized_; }

  const T& operator()(int i, int j, int k) const { return data_[flat_index(n_, Cell{i, j, k})]; }
  const T& at(Cell c) const {
    check_cell(n_, c);
    return data_[flat_index(n_, c)];
  }
  std::span<const T> entries() const { return data_; }

  T total() const {
    T s = T(0);
    for (const T& e : data_) s += e;
    return s;
  }

  /// Rescales to total 1. Throws ZeroMass on an all-zero tensor.
  Tensor normalize() const {
    const T s = total();
    if (ScalarTraits<T>::is_zero(s)) throw Error(ErrorCode::ZeroMass, "tensor has zero total");
    std::vector<T> out(data_.size());
    for (std::size_t idx = 0; idx < data_.size(); ++idx) out[idx] = data_[idx] / s;
    // float rounding can leave the total a few ulps away from 1
    return from_entries(n_, std::move(out), Normalization::Unnormalized).with_flag(true);
  }

  /// Swaps two axes (1-based).
  Tensor transposed(int axis_a, int axis_b) const {
    if (axis_a < 1 || axis_a > 3 || axis_b < 1 || axis_b > 3) {
      throw Error(ErrorCode::InvalidAxis, "axes must be 1, 2 or 3");
    }
    auto swap_cell = [&](Cell c) {
      int v[3] = {c.i, c.j, c.k};
      std::swap(v[axis_a - 1], v[axis_b - 1]);
      return Cell{v[0], v[1], v[2]};
    };
    Tensor t = *this;
    for (const Cell& c : all_cells(n_)) {
      const Cell s = swap_cell(c);
      t.data_[flat_index(n_, c)] = (*this)(s.i, s.j, s.k);
    }
    return t;
  }

  /// Relabels categories: entry (i,j,k) of the result is entry (p(i),p(j),p(k)) of this,
  /// where `perm` is a 0-based permutation of 0..n-1.
  Tensor relabeled(std::span<const int> perm) const {
    Tensor t = *this;
    for (const Cell& c : all_cells(n_)) {
      t.data_[flat_index(n_, c)] = (*this)(perm[c.i - 1] + 1, perm[c.j - 1] + 1, perm[c.k - 1] + 1);
    }
    return t;
  }

  Tensor<double> to_float() const {
    std::vector<double> out;
    out.reserve(data_.size());
    for (const T& e : data_) out.push_back(to_double(e));
    auto t = Tensor<double>::from_entries(n_, std::move(out), Normalization::Unnormalized);
    return t.with_flag(normalized_);
  }

  bool operator==(const Tensor& other) const { return n_ == other.n_ && data_ == other.data_; }

 private:
  template <class U>
  friend class Tensor;

  Tensor with_flag(bool normalized) const {
    Tensor t = *this;
    t.normalized_ = normalized;
    return t;
  }

  int n_ = 0;
  std::vector<T> data_;
  bool normalized_ = false;
};

using ExactTensor = Tensor<Rational>;
using FloatTensor = Tensor<double>;

/// An n x n two-way table with row/column sums. Rows index the first rater of the pair.
template <class T>
class TwoWayTable {
 public:
  static TwoWayTable from_entries(int n, std::vector<T> entries,
                                  Normalization mode = Normalization::Require) {
    if (n < 1) throw Error(ErrorCode::InvalidTensor, "category count must be positive");
    if (entries.size() != static_cast<std::size_t>(n) * n) {
      throw Error(ErrorCode::DimensionMismatch, "expected n^2 entries");
    }
    T total = T(0);
    for (const T& e : entries) {
      if (ScalarTraits<T>::is_negative(e)) throw Error(ErrorCode::InvalidTensor, "negative entry");
      total += e;
    }
    if (mode == Normalization::Require && !ScalarTraits<T>::is_one(total)) {
      throw Error(ErrorCode::InvalidTensor, "entries do not sum to 1");
    }
    TwoWayTable t;
    t.n_ = n;
    t.data_ = std::move(entries);
    return t;
  }

  int n() const { return n_; }
  const T& operator()(int i, int j) const {
    return data_[static_cast<std::size_t>(i - 1) * n_ + static_cast<std::size_t>(j - 1)];
  }
  std::span<const T> entries() const { return data_; }

  T row_sum(int i) const {
    T s = T(0);
    for (int j = 1; j <= n_; ++j) s += (*this)(i, j);
    return s;
  }
  T col_sum(int j) const {
    T s = T(0);
    for (int i = 1; i <= n_; ++i) s += (*this)(i, j);
    return s;
  }
  T total() const {
    T s = T(0);
    for (const T& e : data_) s += e;
    return s;
  }
  TwoWayTable transposed() const {
    std::vector<T> out(data_.size());
    for (int i = 1; i <= n_; ++i)
      for (int j = 1; j <= n_; ++j)
        out[static_cast<std::size_t>(j - 1) * n_ + (i - 1)] = (*this)(i, j);
    TwoWayTable t;
    t.n_ = n_;
    t.data_ = std::move(out);
    return t;
  }

  bool operator==(const TwoWayTable& other) const {
    return n_ == other.n_ && data_ == other.data_;
  }

 private:
  int n_ = 0;
  std::vector<T> data_;
};

/// Sums out one axis. summed_axis = 3 gives the (1,2) table, 2 gives (1,3), 1 gives (2,3).
template <class T>
TwoWayTable<T> marginalize(const Tensor<T>& p, int summed_axis) {
  if (summed_axis < 1 || summed_axis > 3) {
    throw Error(ErrorCode::InvalidAxis, "summed axis must be 1, 2 or 3");
  }
  const int n = p.n();
  std::vector<T> out(static_cast<std::size_t>(n) * n, T(0));
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      for (int k = 1; k <= n; ++k) {
        const T& v = p(i, j, k);
        int r = i, c = j;
        if (summed_axis == 2) {
          c = k;
        } else if (summed_axis == 1) {
          r = j;
          c = k;
        }
        out[static_cast<std::size_t>(r - 1) * n + (c - 1)] += v;
      }
  return TwoWayTable<T>::from_entries(
      n, std::move(out), p.normalized() ? Normalization::Require : Normalization::Unnormalized);
}

/// One-way marginal along `axis` (1-based).
template <class T>
std::vector<T> one_way_marginal(const Tensor<T>& p, int axis) {
  if (axis < 1 || axis > 3) throw Error(ErrorCode::InvalidAxis, "axis must be 1, 2 or 3");
  std::vector<T> out(p.n(), T(0));
  for (const Cell& c : all_cells(p.n())) out[c.component(axis) - 1] += p(c.i, c.j, c.k);
  return out;
}

}  // namespace agreetensor
