#pragma once

#include <array>
#include <vector>

#include "zetafam/arith.hpp"

namespace zetafam {

inline constexpr unsigned kMaxBernoulliIndex = 30;

/// Exact B_2, B_4, ..., B_{2 k_max} from sum_{j<=m} C(m+1, j) B_j = 0.
inline std::vector<BigRational> bernoulli_numbers(unsigned k_max) {
  if (k_max == 0 || k_max > kMaxBernoulliIndex) throw domain_error("bernoulli_numbers: k_max must be in [1, 30]");
  const unsigned top = 2 * k_max;
  std::vector<BigRational> B(top + 1);
  B[0] = 1;
  for (unsigned m = 1; m <= top; ++m) {
    BigRational acc = 0;
    BigInt binom = 1;  // C(m+1, j)
    for (unsigned j = 0; j < m; ++j) {
      acc += BigRational(binom) * B[j];
      binom = binom * (m + 1 - j) / (j + 1);
    }
    B[m] = -acc / (m + 1);
  }
  std::vector<BigRational> even;
  for (unsigned k = 1; k <= k_max; ++k) even.push_back(B[2 * k]);
  return even;
}

/// B_{2k}/(2k)! for k = 1..30 as doubles, computed once from the exact table.
inline const std::array<double, kMaxBernoulliIndex + 1>& bernoulli_over_factorial() {
  static const auto table = [] {
    std::array<double, kMaxBernoulliIndex + 1> t{};
    const auto B = bernoulli_numbers(kMaxBernoulliIndex);
    BigInt fact = 1;
    for (unsigned k = 1; k <= kMaxBernoulliIndex; ++k) {
      fact *= (2 * k - 1) * (2 * k);
      t[k] = static_cast<double>(B[k - 1] / BigRational(fact));
    }
    return t;
  }();
  return table;
}

}  // namespace zetafam
