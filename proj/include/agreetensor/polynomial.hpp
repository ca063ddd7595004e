#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "agreetensor/tensor.hpp"

namespace agreetensor {

/// A monomial in the cell variables P_ijk: (cell, exponent) pairs sorted by cell, every
/// exponent positive.
class Monomial {
 public:
  using Factor = std::pair<Cell, unsigned>;

  Monomial() = default;
  /// Builds from factors in any order; repeated cells are merged, zero exponents dropped.
  explicit Monomial(std::vector<Factor> factors);
  /// One factor per listed cell, with multiplicity.
  static Monomial from_cells(std::vector<Cell> cells);

  const std::vector<Factor>& factors() const { return factors_; }
  unsigned degree() const { return degree_; }
  bool is_constant() const { return factors_.empty(); }
  unsigned exponent(Cell c) const;
  int max_index() const;
  /// Rows of the monomial with multiplicity, lexicographically ordered.
  std::vector<Cell> cells() const;

  bool coprime(const Monomial& other) const;
  Monomial operator*(const Monomial& other) const;
  /// this / other; throws InvalidParams if other does not divide this.
  Monomial divided_by(const Monomial& other) const;

  /// Graded: lower degree first, then lexicographic on the factor list.
  std::strong_ordering operator<=>(const Monomial& other) const;
  bool operator==(const Monomial& other) const { return factors_ == other.factors_; }

  std::string to_string() const;

  template <class T>
  T evaluate(const Tensor<T>& p) const {
    T value = T(1);
    for (const auto& [c, e] : factors_) {
      const T& v = p.at(c);
      for (unsigned s = 0; s < e; ++s) value *= v;
    }
    return value;
  }

 private:
  std::vector<Factor> factors_;
  unsigned degree_ = 0;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept;
};

struct Term {
  std::int64_t coefficient = 0;
  Monomial monomial;
  bool operator==(const Term&) const = default;
};

/// Integer-coefficient polynomial in the P_ijk. Terms are kept combined, nonzero and
/// sorted with the largest monomial first.
class SparsePolynomial {
 public:
  SparsePolynomial() = default;
  explicit SparsePolynomial(std::vector<Term> terms);
  static SparsePolynomial binomial(const Monomial& plus, const Monomial& minus);

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  unsigned degree() const;
  bool is_homogeneous() const;
  int max_index() const;
  const Monomial& leading_monomial() const { return terms_.front().monomial; }

  SparsePolynomial operator-() const;
  SparsePolynomial operator+(const SparsePolynomial& other) const;
  SparsePolynomial operator-(const SparsePolynomial& other) const;
  SparsePolynomial operator*(const Monomial& m) const;

  /// The representative of {p, -p} whose leading coefficient is positive.
  SparsePolynomial sign_normalized() const;

  bool operator==(const SparsePolynomial& other) const { return terms_ == other.terms_; }
  /// Catalog order: degree, then leading monomial, then the remaining terms.
  bool operator<(const SparsePolynomial& other) const;

  /// Text form `+c*P[i,j,k]^e*...` with every coefficient written; "0" for zero.
  std::string to_string() const;
  static SparsePolynomial parse(std::string_view text);

  /// Exact on the rational backend. Throws DimensionMismatch if a variable's index
  /// exceeds p.n().
  template <class T>
  T evaluate(const Tensor<T>& p) const {
    if (max_index() > p.n()) {
      throw Error(ErrorCode::DimensionMismatch, "polynomial uses an index above n");
    }
    T value = T(0);
    for (const auto& t : terms_) value += T(static_cast<long>(t.coefficient)) * t.monomial.evaluate(p);
    return value;
  }

  /// |p(P)| divided by the largest |c * m(P)| over the terms (0 when every term is 0).
  double normalized_residual(const FloatTensor& p) const;

 private:
  std::vector<Term> terms_;
};

std::ostream& operator<<(std::ostream& out, const SparsePolynomial& p);

/// One polynomial per line; blank lines and lines starting with '#' are skipped.
void write_polynomials(std::ostream& out, const std::vector<SparsePolynomial>& polys);
std::vector<SparsePolynomial> read_polynomials(std::istream& in);

/// t x 3 index matrix of a monomial: one row per factor counted with multiplicity,
/// rows in lexicographic order.
struct MonomialMatrix {
  std::vector<Cell> rows;

  static MonomialMatrix from_monomial(const Monomial& m);
  Monomial to_monomial() const { return Monomial::from_cells(rows); }
  std::size_t size() const { return rows.size(); }
  bool operator==(const MonomialMatrix&) const = default;
  auto operator<=>(const MonomialMatrix&) const = default;
};

MonomialMatrix monomial_matrix(const Monomial& m);

/// Number of rows (i, i, i): the diagonal factors counted with multiplicity.
int rho(const MonomialMatrix& a);

/// n x 3 occurrence counts: entry (t, s) is how often value t appears in index position s.
struct OccurrenceMatrix {
  int n = 0;
  std::vector<std::array<int, 3>> counts;  // counts[t - 1][s - 1]

  int operator()(int t, int s) const { return counts[t - 1][s - 1]; }
  bool operator==(const OccurrenceMatrix&) const = default;
};

OccurrenceMatrix occurrence_matrix(const Monomial& m, int n);

/// Batch exact vanishing test against one rational tensor. Entries are scaled to integers
/// by a common denominator, so for homogeneous polynomials vanishing reduces to integer
/// arithmetic; monomial values are cached across calls.
class VanishingChecker {
 public:
  explicit VanishingChecker(const ExactTensor& p);
  bool vanishes(const SparsePolynomial& poly);

 private:
  const mpz_class& value_of(const Monomial& m);

  ExactTensor tensor_;
  std::vector<mpz_class> scaled_;
  std::unordered_map<Monomial, mpz_class, MonomialHash> cache_;
};

}  // namespace agreetensor
