#pragma once

#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>

#include "core.hpp"
#include "subsum.hpp"

namespace zsum::normalizer {

struct NormalizerResult {
  int g;
  long long total;
  bool achieves_bound;
};

// Exhausts the units g mod n and keeps the one minimizing the bar-sum of the
// scaled sequence, smallest g on ties. achieves_bound records total <= n-1,
// which is guaranteed for zero-sum free inputs.
inline NormalizerResult find_normalizer(const core::ResidueSequence& s) {
  if (s.empty()) throw std::domain_error("cannot normalize an empty sequence");
  if (s.multiplicity_of(0) > 0)
    throw std::domain_error("cannot normalize a sequence containing the residue 0");
  int n = s.modulus().value();
  int best_g = 0;
  long long best_total = std::numeric_limits<long long>::max();
  for (int g = 1; g < n; ++g) {
    if (std::gcd(g, n) != 1) continue;
    long long total = 0;
    for (auto [value, count] : s.counts())
      total += static_cast<long long>(
                   core::Residue(static_cast<long long>(g) * value, s.modulus()).bar()) *
               count;
    if (total < best_total) {
      best_total = total;
      best_g = g;
    }
  }
  return {best_g, best_total, best_total <= n - 1};
}

enum class BoundRegime { ben, sc, out_of_range };

inline std::string_view regime_name(BoundRegime r) {
  switch (r) {
    case BoundRegime::ben: return "BEN";
    case BoundRegime::sc: return "SC";
    default: return "out-of-range";
  }
}

struct BoundReport {
  int n;
  int k;
  BoundRegime regime;
  int required;
  int achieved;
  bool holds;
};

// Classical multiplicity floors for zero-sum free sequences of length n-k:
// some residue repeats at least n-2k+1 times when n >= 3k-2 (BEN), and at
// least n-k-floor((n-1)/3) times when 2k+1 <= n < 3k-2 (SC). The regimes
// coincide at n = 3k-2; that boundary is reported as BEN.
inline BoundReport check_multiplicity_bound(const core::ResidueSequence& s, int k) {
  int n = s.modulus().value();
  if (s.length() != n - k)
    throw std::domain_error("sequence length " + std::to_string(s.length()) +
                            " does not equal n-k = " + std::to_string(n - k));
  if (k < 1 || n < 2 * k + 1)
    throw std::domain_error("multiplicity bounds need n >= 2k+1 >= 3 (n=" +
                            std::to_string(n) + ", k=" + std::to_string(k) + ")");
  if (!subsum::is_zero_sum_free(s))
    throw std::domain_error("multiplicity bounds apply to zero-sum free sequences only");

  BoundRegime regime = n >= 3 * k - 2 ? BoundRegime::ben : BoundRegime::sc;
  int required = regime == BoundRegime::ben ? n - 2 * k + 1 : n - k - (n - 1) / 3;
  int achieved = s.max_multiplicity();
  return {n, k, regime, required, achieved, achieved >= required};
}

}  // namespace zsum::normalizer
