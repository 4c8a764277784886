#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <json.hpp>

#include "core.hpp"
#include "davenport.hpp"
#include "detail/engine.hpp"
#include "detail/parallel.hpp"
#include "dihedral.hpp"
#include "normalizer.hpp"
#include "subsum.hpp"

namespace zsum::cli {

struct SweepConfig {
  int max_n = 0;  // 0 picks the suite default
  int jobs = 1;
  std::uint64_t seed = 0;
  bool timing = false;
};

struct SweepReport {
  std::string suite;
  int max_n = 0;
  std::uint64_t seed = 0;
  std::map<std::string, long long> counts;
  std::vector<std::string> counterexamples;
  long long elapsed_ms = 0;
};

namespace sweep_detail {

struct ChunkOutcome {
  std::map<std::string, long long> counts;
  std::vector<std::string> counterexamples;
  std::vector<std::string> payload;
};

template <typename Work>
inline std::vector<ChunkOutcome> run_partition(int count, int jobs, Work&& work) {
  std::vector<ChunkOutcome> slots(static_cast<std::size_t>(count));
  detail::run_chunks(count, jobs, [&](int i) { slots[static_cast<std::size_t>(i)] = work(i); });
  return slots;
}

inline void fold(SweepReport& r, const std::vector<ChunkOutcome>& slots) {
  for (const auto& c : slots) {
    for (const auto& [key, v] : c.counts) r.counts[key] += v;
    r.counterexamples.insert(r.counterexamples.end(), c.counterexamples.begin(),
                             c.counterexamples.end());
  }
}

inline core::ResidueSequence seq_from_values(core::Modulus m, const std::vector<int>& values) {
  std::map<int, int> counts;
  for (int v : values) ++counts[v];
  return core::ResidueSequence::from_counts(m, counts);
}

// Nondecreasing value lists of exactly `length` entries from [scratch.back()
// or min_value, max_value] with total at most cap. Since later entries are
// at least as large as the current one, a branch dies as soon as
// value * slots_left exceeds the remaining cap.
template <typename Fn>
inline void each_bounded_multiset(int length, int min_value, int max_value, int cap,
                                  std::vector<int>& scratch, Fn&& fn) {
  if (static_cast<int>(scratch.size()) == length) {
    fn(scratch);
    return;
  }
  int slots_left = length - static_cast<int>(scratch.size());
  for (int v = min_value; v <= max_value && static_cast<long long>(v) * slots_left <= cap;
       ++v) {
    scratch.push_back(v);
    each_bounded_multiset(length, v, max_value, cap - v, scratch, fn);
    scratch.pop_back();
  }
}

// ---- interval-theorem and bounds share the same instance family: for each
// (n, k) with n >= 2k+1 >= 3, every multiset of bar values in [1, n-1] of
// length n-k summing to at most n-1. These are exactly the zero-sum free
// sequences with bar-sum <= n-1 (the bar-sum cap rules out the residue 0,
// and subset sums of positive numbers capped by n-1 never hit a multiple
// of n); the verifier still re-checks the hypotheses on every instance.

inline std::vector<std::pair<int, int>> nk_cells(int min_n, int max_n) {
  std::vector<std::pair<int, int>> cells;
  for (int n = min_n; n <= max_n; ++n)
    for (int k = 1; 2 * k + 1 <= n; ++k) cells.emplace_back(n, k);
  return cells;
}

inline SweepReport sweep_interval(const SweepConfig& cfg) {
  int max_n = cfg.max_n > 0 ? cfg.max_n : 12;
  auto cells = nk_cells(3, max_n);
  auto slots = run_partition(static_cast<int>(cells.size()), cfg.jobs, [&](int i) {
    auto [n, k] = cells[static_cast<std::size_t>(i)];
    ChunkOutcome out;
    core::Modulus m(n);
    long long instances = 0;
    std::vector<int> scratch;
    each_bounded_multiset(n - k, 1, n - 1, n - 1, scratch, [&](const std::vector<int>& values) {
      auto s = seq_from_values(m, values);
      auto rep = subsum::verify_interval_theorem(s, k);
      ++instances;
      if (!rep.hypotheses_met)
        out.counterexamples.push_back(core::format_sequence(s) +
                                      " unexpectedly fails the hypotheses");
      else if (!rep.equality_holds || !rep.corollary_holds)
        out.counterexamples.push_back(core::format_sequence(s) + " k=" + std::to_string(k) +
                                      " misses targets");
    });
    out.counts["n=" + std::to_string(n)] = instances;
    return out;
  });
  SweepReport r{"interval-theorem", max_n, cfg.seed, {}, {}, 0};
  fold(r, slots);
  return r;
}

inline SweepReport sweep_bounds(const SweepConfig& cfg) {
  int max_n = cfg.max_n > 0 ? cfg.max_n : 13;
  auto cells = nk_cells(3, max_n);
  auto slots = run_partition(static_cast<int>(cells.size()), cfg.jobs, [&](int i) {
    auto [n, k] = cells[static_cast<std::size_t>(i)];
    ChunkOutcome out;
    core::Modulus m(n);
    long long instances = 0;
    std::vector<int> scratch;
    each_bounded_multiset(n - k, 1, n - 1, n - 1, scratch, [&](const std::vector<int>& values) {
      auto s = seq_from_values(m, values);
      auto rep = normalizer::check_multiplicity_bound(s, k);
      ++instances;
      if (!rep.holds)
        out.counterexamples.push_back(
            core::format_sequence(s) + " k=" + std::to_string(k) + " " +
            std::string(normalizer::regime_name(rep.regime)) + " needs multiplicity " +
            std::to_string(rep.required) + ", achieved " + std::to_string(rep.achieved));
    });
    out.counts["n=" + std::to_string(n)] = instances;
    return out;
  });
  SweepReport r{"bounds", max_n, cfg.seed, {}, {}, 0};
  fold(r, slots);
  return r;
}

// ---- normalizer: every zero-sum free multiset over [1, n-1] with length
// above n/2, found by DFS with an incremental reachable-sums bitmask; a set
// zero bit prunes the whole subtree since freeness is downward closed.

inline SweepReport sweep_normalizer(const SweepConfig& cfg) {
  int max_n = cfg.max_n > 0 ? cfg.max_n : 12;
  std::vector<std::pair<int, int>> cells;
  for (int n = 3; n <= max_n; ++n)
    for (int v = 1; v < n; ++v) cells.emplace_back(n, v);

  auto slots = run_partition(static_cast<int>(cells.size()), cfg.jobs, [&](int i) {
    auto [n, v] = cells[static_cast<std::size_t>(i)];
    ChunkOutcome out;
    core::Modulus m(n);
    long long instances = 0;
    std::uint64_t ring = (std::uint64_t{1} << n) - 1;
    std::vector<int> values{v};

    auto extend = [&](std::uint64_t reach, int value) {
      std::uint64_t rot = ((reach << value) | (reach >> (n - value))) & ring;
      return reach | rot | (std::uint64_t{1} << value);
    };
    auto rec = [&](auto&& self, std::uint64_t reach) -> void {
      if ((reach & 1) != 0) return;  // some subsequence sums to 0 mod n
      if (static_cast<int>(values.size()) > n / 2) {
        ++instances;
        auto s = seq_from_values(m, values);
        auto res = normalizer::find_normalizer(s);
        if (!res.achieves_bound)
          out.counterexamples.push_back(core::format_sequence(s) + " best total " +
                                        std::to_string(res.total) + " exceeds n-1");
      }
      if (static_cast<int>(values.size()) >= n - 1) return;
      for (int w = values.back(); w < n; ++w) {
        values.push_back(w);
        self(self, extend(reach, w));
        values.pop_back();
      }
    };
    rec(rec, std::uint64_t{1} << v);
    out.counts["n=" + std::to_string(n)] = instances;
    return out;
  });
  SweepReport r{"normalizer", max_n, cfg.seed, {}, {}, 0};
  fold(r, slots);
  return r;
}

// ---- classification: chunked by least element id, merged in id order so
// the found list is in lexicographic order before family comparison.

inline SweepReport sweep_classification(const SweepConfig& cfg) {
  int max_n = cfg.max_n > 0 ? cfg.max_n : 6;
  if (max_n > 8) throw std::domain_error("classification sweep supports max_n <= 8");
  SweepReport r{"classification", max_n, cfg.seed, {}, {}, 0};
  for (int n = 3; n <= max_n; ++n) {
    core::Modulus m(n);
    auto slots = run_partition(2 * n, cfg.jobs, [&](int least) {
      ChunkOutcome out;
      for (const auto& s : dihedral::free_multisets(m, n, least))
        out.payload.push_back(dihedral::format_dihedral_sequence(s));
      return out;
    });
    std::vector<dihedral::DihedralSequence> found;
    for (const auto& c : slots)
      for (const auto& text : c.payload)
        found.push_back(dihedral::parse_dihedral_sequence(text));
    auto rep = dihedral::compare_with_family(m, found);
    r.counts[std::to_string(n)] = rep.found_count;
    for (const auto& s : rep.extras)
      r.counterexamples.push_back("unexpected product-one free sequence: " +
                                  dihedral::format_dihedral_sequence(s));
    for (const auto& s : rep.missing)
      r.counterexamples.push_back("family member not found free: " +
                                  dihedral::format_dihedral_sequence(s));
  }
  return r;
}

// ---- davenport: one chunk per group, each searched to expected + 1 so a
// correct value is certified, not just reached.

inline SweepReport sweep_davenport(const SweepConfig& cfg) {
  int max_n = cfg.max_n > 0 ? cfg.max_n : 12;
  std::vector<std::pair<std::string, int>> cells;
  for (int n = 2; n <= std::min(max_n, 12); ++n)
    cells.emplace_back("cyclic:" + std::to_string(n), n - 1);
  for (int n = 3; n <= std::min(max_n, 7); ++n)
    cells.emplace_back("dihedral:" + std::to_string(n), n);
  for (const auto& ns : std::vector<std::vector<int>>{{2, 2}, {3, 3}, {2, 4}, {2, 2, 2}}) {
    auto bound = davenport::abelian_lower_bound(ns);
    std::string name = "sum:";
    for (std::size_t i = 0; i < ns.size(); ++i)
      name += (i > 0 ? "x" : "") + std::to_string(ns[i]);
    cells.emplace_back(name, static_cast<int>(bound.bound));
  }

  auto slots = run_partition(static_cast<int>(cells.size()), cfg.jobs, [&](int i) {
    const auto& [name, expected] = cells[static_cast<std::size_t>(i)];
    ChunkOutcome out;
    auto g = davenport::GroupSpec::from_name(name);
    auto res = davenport::davenport_search(g, expected + 1, 1);
    out.counts[name] = res.d;
    if (!res.bounded)
      out.counterexamples.push_back(name + ": still unbounded at length " +
                                    std::to_string(expected + 1));
    else if (res.d != expected)
      out.counterexamples.push_back(name + ": d=" + std::to_string(res.d) + ", expected " +
                                    std::to_string(expected));
    return out;
  });
  SweepReport r{"davenport", max_n, cfg.seed, {}, {}, 0};
  fold(r, slots);
  return r;
}

// ---- oracle-equivalence: the fast implementations against independent
// brute-force enumerations.

inline bool int_oracle_matches(const core::ResidueSequence& s) {
  long long upper = core::sums(s).sigma_bar;
  std::vector<char> mark(static_cast<std::size_t>(upper) + 1, 0);
  std::vector<std::pair<int, int>> items(s.counts().begin(), s.counts().end());
  std::vector<int> bars;
  bars.reserve(items.size());
  for (auto [value, count] : items) {
    (void)count;
    bars.push_back(core::Residue(value, s.modulus()).bar());
  }
  auto rec = [&](auto&& self, std::size_t idx, int picked, long long total) -> void {
    if (idx == items.size()) {
      if (picked > 0) mark[static_cast<std::size_t>(total)] = 1;
      return;
    }
    for (int c = 0; c <= items[idx].second; ++c)
      self(self, idx + 1, picked + c, total + static_cast<long long>(c) * bars[idx]);
  };
  rec(rec, 0, 0, 0);

  auto ints = subsum::subsums_int(s);
  auto it = ints.members.begin();
  for (long long t = 1; t <= upper; ++t) {
    bool brute = mark[static_cast<std::size_t>(t)] != 0;
    bool dp = it != ints.members.end() && *it == t;
    if (dp) ++it;
    if (brute != dp) return false;
  }
  return it == ints.members.end();
}

inline SweepReport sweep_oracle(const SweepConfig& cfg) {
  int max_n = cfg.max_n > 0 ? cfg.max_n : 10;
  if (max_n > 12) throw std::domain_error("oracle sweep supports max_n <= 12");

  SweepReport r{"oracle-equivalence", max_n, cfg.seed, {}, {}, 0};

  // (a) integer subsums vs direct enumeration, every multiset over Z_n of
  // length up to max_n, chunked by (n, least value).
  std::vector<std::pair<int, int>> cells;
  for (int n = 2; n <= max_n; ++n)
    for (int v = 0; v < n; ++v) cells.emplace_back(n, v);
  auto slots = run_partition(static_cast<int>(cells.size()), cfg.jobs, [&](int i) {
    auto [n, v] = cells[static_cast<std::size_t>(i)];
    ChunkOutcome out;
    core::Modulus m(n);
    long long instances = 0;
    std::vector<int> values{v};
    auto rec = [&](auto&& self) -> void {
      ++instances;
      auto s = seq_from_values(m, values);
      if (!int_oracle_matches(s))
        out.counterexamples.push_back(core::format_sequence(s) +
                                      ": subsums_int disagrees with enumeration");
      if (static_cast<int>(values.size()) == max_n) return;
      for (int w = values.back(); w < n; ++w) {
        values.push_back(w);
        self(self);
        values.pop_back();
      }
    };
    rec(rec);
    out.counts["int:n=" + std::to_string(n)] = instances;
    return out;
  });
  fold(r, slots);

  // (b) product-set recurrences vs permutation brute force over D_6 and D_8,
  // every multiset of length up to 6, chunked by (n, least id). Permutation
  // products are memoized per multiset so shared sub-multisets are expanded
  // once per chunk.
  std::vector<std::pair<int, int>> pcells;
  for (int n : {3, 4})
    for (int v = 0; v < 2 * n; ++v) pcells.emplace_back(n, v);
  auto pslots = run_partition(static_cast<int>(pcells.size()), cfg.jobs, [&](int i) {
    auto [n, v] = pcells[static_cast<std::size_t>(i)];
    ChunkOutcome out;
    core::Modulus m(n);
    auto table = dihedral::dihedral_table(m);
    detail::ProductSetEngine engine(table);
    std::unordered_map<std::uint64_t, std::uint64_t> perm_pi;
    std::unordered_map<std::uint64_t, std::uint64_t> perm_big;
    long long instances = 0;

    auto pack = [](const std::vector<int>& ids) {
      std::uint64_t k = std::uint64_t{1} << (6 * ids.size());
      for (std::size_t i = 0; i < ids.size(); ++i)
        k |= static_cast<std::uint64_t>(ids[i]) << (6 * i);
      return k;
    };
    auto erased = [](const std::vector<int>& ids, std::size_t at) {
      std::vector<int> rest(ids.begin(), ids.end());
      rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(at));
      return rest;
    };
    auto brute_pi = [&](const std::vector<int>& ids) -> std::uint64_t {
      auto key = pack(ids);
      auto it = perm_pi.find(key);
      if (it != perm_pi.end()) return it->second;
      std::uint64_t mask = 0;
      std::vector<int> perm = ids;
      do {
        int p = perm[0];
        for (std::size_t j = 1; j < perm.size(); ++j) p = table.mul(p, perm[j]);
        mask |= std::uint64_t{1} << p;
      } while (std::next_permutation(perm.begin(), perm.end()));
      perm_pi.emplace(key, mask);
      return mask;
    };
    auto brute_big = [&](auto&& self, const std::vector<int>& ids) -> std::uint64_t {
      auto key = pack(ids);
      auto it = perm_big.find(key);
      if (it != perm_big.end()) return it->second;
      std::uint64_t mask = brute_pi(ids);
      if (ids.size() > 1)
        for (std::size_t j = 0; j < ids.size(); ++j) {
          if (j > 0 && ids[j] == ids[j - 1]) continue;
          mask |= self(self, erased(ids, j));
        }
      perm_big.emplace(key, mask);
      return mask;
    };

    std::vector<int> ids{v};
    auto rec = [&](auto&& self) -> void {
      ++instances;
      if (engine.full_products(ids) != brute_pi(ids) ||
          engine.all_products(ids) != brute_big(brute_big, ids))
        out.counterexamples.push_back(
            dihedral::format_dihedral_sequence(dihedral::DihedralSequence::from_ids(m, ids)) +
            ": product sets disagree with permutation enumeration");
      if (ids.size() == 6) return;
      for (int g = ids.back(); g < 2 * n; ++g) {
        ids.push_back(g);
        self(self);
        ids.pop_back();
      }
    };
    rec(rec);
    out.counts["pi:D" + std::to_string(2 * n)] = instances;
    return out;
  });
  fold(r, pslots);
  return r;
}

}  // namespace sweep_detail

inline SweepReport run_sweep(const std::string& suite, const SweepConfig& cfg) {
  auto start = std::chrono::steady_clock::now();
  SweepReport r;
  if (suite == "interval-theorem")
    r = sweep_detail::sweep_interval(cfg);
  else if (suite == "normalizer")
    r = sweep_detail::sweep_normalizer(cfg);
  else if (suite == "bounds")
    r = sweep_detail::sweep_bounds(cfg);
  else if (suite == "classification")
    r = sweep_detail::sweep_classification(cfg);
  else if (suite == "davenport")
    r = sweep_detail::sweep_davenport(cfg);
  else if (suite == "oracle-equivalence")
    r = sweep_detail::sweep_oracle(cfg);
  else
    throw std::domain_error("unknown suite \"" + suite + "\"");
  r.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                     std::chrono::steady_clock::now() - start)
                     .count();
  return r;
}

// Wall time is only embedded on request; default reports depend on nothing
// but the suite, max_n and seed, so equal configs give byte-identical output
// for any job count.
inline nlohmann::json sweep_json(const SweepReport& r, bool include_timing) {
  nlohmann::json j{{"suite", r.suite},
                   {"config", {{"max_n", r.max_n}, {"seed", r.seed}}},
                   {"counts", r.counts},
                   {"counterexamples", r.counterexamples}};
  if (include_timing) j["elapsed_ms"] = r.elapsed_ms;
  return j;
}

inline void sweep_text(std::ostream& out, const SweepReport& r, bool include_timing) {
  out << "suite: " << r.suite << "\n"
      << "max_n: " << r.max_n << "\n"
      << "seed: " << r.seed << "\n";
  for (const auto& [key, v] : r.counts) out << "count[" << key << "]: " << v << "\n";
  out << "counterexamples: " << r.counterexamples.size() << "\n";
  for (const auto& c : r.counterexamples) out << "  " << c << "\n";
  if (include_timing) out << "elapsed_ms: " << r.elapsed_ms << "\n";
  out << "result: " << (r.counterexamples.empty() ? "pass" : "fail") << "\n";
}

}  // namespace zsum::cli
