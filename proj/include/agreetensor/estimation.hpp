#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "agreetensor/models.hpp"
#include "agreetensor/tensor.hpp"

namespace agreetensor {

/// Observed counts of the n^3 joint ratings.
class CountTensor {
 public:
  /// Throws InvalidTensor on a zero total, DimensionMismatch on a wrong entry count.
  static CountTensor from_entries(int n, std::vector<std::uint64_t> entries);

  int n() const { return n_; }
  std::uint64_t total() const { return total_; }
  std::uint64_t operator()(int i, int j, int k) const { return data_[flat_index(n_, Cell{i, j, k})]; }
  const std::vector<std::uint64_t>& entries() const { return data_; }

  /// counts / N
  FloatTensor proportions() const;
  CountTensor relabeled(const std::vector<int>& perm) const;

 private:
  int n_ = 0;
  std::uint64_t total_ = 0;
  std::vector<std::uint64_t> data_;
};

/// round(N * P) cellwise.
CountTensor round_counts(const FloatTensor& p, std::uint64_t total);

/// sum N_ijk log P_ijk over cells with N_ijk > 0. Throws SupportMismatch where P = 0 < N.
double loglik(const CountTensor& counts, const FloatTensor& p);

struct FitResult {
  Family family = Family::QI;
  // Empty when the optimum lies at an infinite parameter value.
  std::optional<ModelParams<double>> params;
  FloatTensor fitted;
  double loglik = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
  // IPF: loglik after each sweep. EM: every iteration of the best restart.
  std::vector<double> loglik_trace;
  // EM: whether every restart's trace was non-decreasing.
  bool monotone = true;
  std::vector<std::string> warnings;
};

struct FitOptions {
  double tol = 0.0;  // 0 picks the fitter's default
  std::size_t max_iter = 100000;
  std::uint64_t seed = 0;
  int restarts = 5;
};

inline constexpr double kIpfTolerance = 1e-10;
inline constexpr double kEmTolerance = 1e-8;

/// Iterative proportional fitting for QI, qI and pQI from the uniform tensor. Each sweep
/// rescales to the three one-way margins, then to each family statistic (diagonal cells,
/// diagonal total, or the three agreement slabs) against its complement. Stops when the
/// largest statistic gap is below tol.
FitResult ipf_fit(const CountTensor& counts, Family family, const FitOptions& options = {});

/// EM for Mix, mix and pMix with one latent component per summand. Each restart starts from
/// seeded random responsibilities; the best final loglik wins. Stops when one iteration gains
/// less than tol in loglik.
FitResult em_fit(const CountTensor& counts, Family family, const FitOptions& options = {});

/// ipf_fit or em_fit according to the family.
FitResult fit(const CountTensor& counts, Family family, const FitOptions& options = {});

}  // namespace agreetensor
