#pragma once

#include <vector>

#include "agreetensor/models.hpp"
#include "agreetensor/scalar.hpp"
#include "agreetensor/tensor.hpp"

namespace testing_support {

using agreetensor::Rational;

inline Rational R(const char* s) { return agreetensor::parse_rational(s); }

inline std::vector<Rational> Rs(std::initializer_list<const char*> xs) {
  std::vector<Rational> out;
  for (const char* x : xs) out.push_back(R(x));
  return out;
}

inline std::vector<Rational> uniform(int n) { return std::vector<Rational>(n, Rational(1, n)); }

inline agreetensor::ExactTensor uniform_tensor(int n) {
  return agreetensor::ExactTensor::from_entries(
      n, std::vector<Rational>(static_cast<std::size_t>(n) * n * n, Rational(1, n * n * n)));
}

}  // namespace testing_support
