#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "core.hpp"
#include "detail/bitvec.hpp"
#include "errors.hpp"

namespace zsum::subsum {

// Sums of nonempty subsequences, as residues mod n.
struct SubsumSetMod {
  core::Modulus modulus;
  std::set<int> members;
};

// Sums of nonempty subsequences, taken over the integers via the bar map.
// upper is the bar-sum of the whole sequence, so members lies in [1, upper].
struct SubsumSetInt {
  std::set<long long> members;
  long long upper;
};

// Certificate that `target` is an integer subsequence sum: a sub-multiset of
// the queried sequence whose bar values add up to exactly `target`.
struct IntervalWitness {
  core::ResidueSequence subsequence;
  long long target;
};

struct TheoremReport {
  bool hypotheses_met;
  int n;
  int k;
  long long sigma_bar;
  bool equality_holds;
  std::vector<long long> missing_targets;
  bool corollary_holds;
};

namespace detail {

// Bit i of `reach` is set iff i is a bar-sum of some nonempty sub-multiset.
// pred[i] records the term value whose bar completed i the first time i
// became reachable; walking pred backwards rebuilds one witness. Distinct
// term values are folded in ascending order, so the recorded predecessor is
// always the smallest value that can finish the sum at that point.
struct IntTable {
  long long upper;
  zsum::detail::BitVec reach;
  std::vector<int> pred;
};

inline IntTable build_int_table(const core::ResidueSequence& s) {
  long long upper = core::sums(s).sigma_bar;
  IntTable t{upper, zsum::detail::BitVec(static_cast<int>(upper) + 1),
             std::vector<int>(static_cast<std::size_t>(upper) + 1, -1)};
  t.reach.set(0);
  for (auto [value, count] : s.counts()) {
    int b = core::Residue(value, s.modulus()).bar();
    for (int c = 0; c < count; ++c) {
      zsum::detail::BitVec before = t.reach;
      t.reach.or_shifted(before, b);
      bool grew = false;
      for (long long i = 1; i <= upper; ++i)
        if (t.reach.test(static_cast<int>(i)) && !before.test(static_cast<int>(i))) {
          t.pred[static_cast<std::size_t>(i)] = value;
          grew = true;
        }
      if (!grew) break;
    }
  }
  return t;
}

}  // namespace detail

inline SubsumSetMod subsums_mod(const core::ResidueSequence& s) {
  int n = s.modulus().value();
  zsum::detail::BitVec reach(n);
  for (auto [value, count] : s.counts()) {
    for (int c = 0; c < count; ++c) {
      zsum::detail::BitVec before = reach;
      reach.or_rotated(before, value, n);
      reach.set(value);
      if (reach == before) break;
    }
  }
  SubsumSetMod out{s.modulus(), {}};
  reach.for_each_set([&](int v) { out.members.insert(v); });
  return out;
}

inline bool is_zero_sum_free(const core::ResidueSequence& s) {
  return subsums_mod(s).members.count(0) == 0;
}

inline SubsumSetInt subsums_int(const core::ResidueSequence& s) {
  auto table = detail::build_int_table(s);
  SubsumSetInt out{{}, table.upper};
  table.reach.for_each_set([&](int v) {
    if (v >= 1) out.members.insert(v);
  });
  return out;
}

inline std::optional<IntervalWitness> subsum_witness(const core::ResidueSequence& s,
                                                     long long t) {
  if (t < 1) return std::nullopt;
  auto table = detail::build_int_table(s);
  if (t > table.upper || !table.reach.test(static_cast<int>(t))) return std::nullopt;

  std::map<int, int> picked;
  long long rem = t;
  while (rem > 0) {
    int value = table.pred[static_cast<std::size_t>(rem)];
    if (value < 0)
      throw invariant_violation("reachable total " + std::to_string(rem) +
                                " has no recorded predecessor");
    ++picked[value];
    rem -= core::Residue(value, s.modulus()).bar();
  }
  auto sub = core::ResidueSequence::from_counts(s.modulus(), picked);
  if (!sub.divides(s) || core::sums(sub).sigma_bar != t)
    throw invariant_violation("reconstructed witness for " + std::to_string(t) +
                              " does not validate against " + core::format_sequence(s));
  return IntervalWitness{sub, t};
}

// Splits target = ones + 2*twos with 0 <= ones <= max_ones, 0 <= twos <= max_twos.
// Valid for every target in [1, max_ones + 2*max_twos]: taking the fewest twos
// that leave at most max_ones behind always lands in range.
inline std::pair<int, int> decompose_ones_twos(int max_ones, int max_twos, int target) {
  if (max_ones < 1 || max_twos < 1 || target < 1 || target > max_ones + 2 * max_twos)
    throw std::domain_error("ones-and-twos split needs max_ones, max_twos >= 1 and target in [1, max_ones + 2*max_twos]");
  int twos = target > max_ones ? (target - max_ones + 1) / 2 : 0;
  int ones = target - 2 * twos;
  return {ones, twos};
}

// Same split with threes; requires max_ones >= 2 so the remainder mod 3 is
// always coverable by ones.
inline std::pair<int, int> decompose_ones_threes(int max_ones, int max_threes, int target) {
  if (max_ones < 2 || max_threes < 1 || target < 1 || target > max_ones + 3 * max_threes)
    throw std::domain_error("ones-and-threes split needs max_ones >= 2, max_threes >= 1 and target in [1, max_ones + 3*max_threes]");
  int threes = target > max_ones ? (target - max_ones + 2) / 3 : 0;
  int ones = target - 3 * threes;
  return {ones, threes};
}

// S with T removed. Bar-sums are additive under this split:
// sigma_bar(T) + sigma_bar(result) = sigma_bar(S).
inline core::ResidueSequence complement_witness(const core::ResidueSequence& s,
                                                const core::ResidueSequence& t) {
  if (!t.divides(s))
    throw std::domain_error("complement requires a sub-multiset over the same modulus");
  std::map<int, int> left = s.counts();
  for (auto [value, count] : t.counts()) left[value] -= count;
  return core::ResidueSequence::from_counts(s.modulus(), left);
}

namespace detail {

struct IntervalHypotheses {
  int n;
  int k;
  long long sigma_bar;
};

// Checks, in order: zero-sum freeness, the length constraint n >= 2k+1 >= 3
// with k = n - |S|, and the bar-sum cap sigma_bar <= n-1. Throws a domain
// error naming the first hypothesis that fails.
inline IntervalHypotheses require_interval_hypotheses(const core::ResidueSequence& s) {
  int n = s.modulus().value();
  int k = n - s.length();
  if (!is_zero_sum_free(s))
    throw std::domain_error("hypothesis failed: sequence is not zero-sum free");
  if (k < 1 || n < 2 * k + 1)
    throw std::domain_error("hypothesis failed: n >= 2k+1 >= 3 (n=" + std::to_string(n) +
                            ", k=" + std::to_string(k) + ")");
  long long sb = core::sums(s).sigma_bar;
  if (sb > n - 1)
    throw std::domain_error("hypothesis failed: bar-sum " + std::to_string(sb) +
                            " exceeds n-1 = " + std::to_string(n - 1));
  return {n, k, sb};
}

}  // namespace detail

// Constructive form of the interval equality: produces a witness for any
// target in [1, sigma_bar]. Small targets (<= floor(n/2)) come straight from
// the integer DP; large targets are the complement of a witness for
// sigma_bar - target, which is itself small. A DP miss under valid
// hypotheses contradicts the interval equality and raises
// invariant_violation.
inline IntervalWitness interval_decompose(const core::ResidueSequence& s, long long t) {
  auto hyp = detail::require_interval_hypotheses(s);
  if (t < 1 || t > hyp.sigma_bar)
    throw std::domain_error("target must lie in [1, " + std::to_string(hyp.sigma_bar) +
                            "], got " + std::to_string(t));
  if (t <= hyp.n / 2) {
    auto direct = subsum_witness(s, t);
    if (!direct)
      throw invariant_violation("no witness for reachable target " + std::to_string(t) +
                                " in " + core::format_sequence(s));
    return *direct;
  }
  long long rest = hyp.sigma_bar - t;
  if (rest == 0) return IntervalWitness{s, t};
  auto small = subsum_witness(s, rest);
  if (!small)
    throw invariant_violation("no witness for complement target " + std::to_string(rest) +
                              " in " + core::format_sequence(s));
  return IntervalWitness{complement_witness(s, small->subsequence), t};
}

// Full report for one sequence: whether the hypotheses hold, whether the
// integer subsums fill [1, sigma_bar] exactly, and whether [1, n-k] is
// covered. The comparison is reported even when hypotheses fail, so
// near-miss counterexamples stay visible.
inline TheoremReport verify_interval_theorem(const core::ResidueSequence& s, int k) {
  int n = s.modulus().value();
  if (s.length() != n - k)
    throw std::domain_error("sequence length " + std::to_string(s.length()) +
                            " does not equal n-k = " + std::to_string(n - k));
  auto totals = core::sums(s);
  bool hyp = k >= 1 && n >= 2 * k + 1 && totals.sigma_bar <= n - 1 && is_zero_sum_free(s);

  auto ints = subsums_int(s);
  std::vector<long long> missing;
  for (long long t = 1; t <= totals.sigma_bar; ++t)
    if (ints.members.count(t) == 0) missing.push_back(t);

  bool corollary = true;
  for (long long t = 1; t <= n - k; ++t)
    if (ints.members.count(t) == 0) {
      corollary = false;
      break;
    }

  bool equal = missing.empty();
  return TheoremReport{hyp, n, k, totals.sigma_bar, equal, std::move(missing), corollary};
}

}  // namespace zsum::subsum
