#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "agreetensor/models.hpp"
#include "agreetensor/polynomial.hpp"

namespace agreetensor {

enum class SigmaVariant { Preserve, NonIncrease };

/// All F_sigma(A) up to row order: matrices whose columns are rearrangements of A's
/// columns, with rho equal to (Preserve) or at most (NonIncrease) rho(A), excluding A
/// itself. Sorted. Throws DegreeTooLarge for more than 8 rows.
std::vector<MonomialMatrix> sigma_set(const MonomialMatrix& a, SigmaVariant variant);

/// Hardcoded lists for n = 2; for QI and Mix with n >= 3 the degree-2 and degree-3
/// index-exchange binomials. Throws Unsupported otherwise.
std::vector<SparsePolynomial> catalog(Family family, int n);

struct GeneratedInvariant {
  std::string family;  // "i", "ii", ... by the shape that produced it
  SparsePolynomial poly;
};

struct GeneratorOptions {
  int max_degree = 0;                 // 0 keeps every family
  std::size_t budget = 4'000'000;     // enumerated monomials or candidates per family
};

/// Binomials m - m' with m' in Sigma(A_m), shapes (i)-(v). Deduplicated up to sign and
/// sorted; the labelled form keeps the first family that produced each polynomial.
std::vector<GeneratedInvariant> generate_qin_labeled(int n, const GeneratorOptions& options = {});
std::vector<SparsePolynomial> generate_qin_invariants(int n, const GeneratorOptions& options = {});

/// Shapes (i)-(vii) for the uniform-diagonal mixture. Every candidate built from
/// Sigma'-sets is checked with mixture_cone_vanishes and dropped if it fails.
std::vector<GeneratedInvariant> generate_mixn_labeled(int n, const GeneratorOptions& options = {});
std::vector<SparsePolynomial> generate_mixn_invariants(int n, const GeneratorOptions& options = {});

/// Exact identity test: substitutes P_ijk = u a_i b_j c_k + v [i = j = k] with all
/// parameters symbolic and checks that every coefficient cancels.
bool mixture_cone_vanishes(const SparsePolynomial& poly);

/// Same idea for the toric families: every term's parameter-exponent image is collected
/// and the coefficients per image must cancel.
bool toric_vanishes(Family family, const SparsePolynomial& poly);

/// F = G for coprime f, g with deg_P111(f) = deg_P222(g) and deg_P222(f) = deg_P111(g).
/// Throws HypothesisViolated otherwise.
bool matrix_criterion(const Monomial& f, const Monomial& g, int n);

/// H = F and W = G, or H = G and W = F, under the tetranomial hypotheses: f contains
/// P111 once and no P222, g contains P222 once and no P111, f / P111 = g / P222, h and w
/// avoid both, f and h coprime, g and w coprime.
bool matrix_criterion(const Monomial& f, const Monomial& g, const Monomial& h,
                      const Monomial& w, int n);

/// Dimension of the degree-d piece of the toric ideal of QI, qI or pQI: the number of
/// degree-d monomials minus the number of distinct parameter-exponent images.
std::uint64_t fiber_dimension(Family family, int n, int degree,
                              std::uint64_t budget = 10'000'000);

/// A basis of the same graded piece: each fiber contributes first - other for every
/// other member, with members in monomial order.
std::vector<SparsePolynomial> toric_binomials(Family family, int n, int degree,
                                              std::uint64_t budget = 10'000'000);

/// Sign-normalizes, sorts and removes duplicates and zeros.
std::vector<SparsePolynomial> canonical_list(std::vector<SparsePolynomial> polys);

}  // namespace agreetensor
