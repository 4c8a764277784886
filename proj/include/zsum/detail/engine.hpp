#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "../errors.hpp"

namespace zsum::detail {

// Finite group as a flat multiplication table over element ids [0, order).
struct GroupTable {
  int order;
  int identity;
  std::vector<int> mult;

  int mul(int a, int b) const {
    return mult[static_cast<std::size_t>(a) * static_cast<std::size_t>(order) + b];
  }
};

// Memoized product sets over multisets of group elements.
//
// For a multiset M, full(M) is the set of products of all |M| terms in every
// order, and all(M) is the union of full(T) over the nonempty T <= M. Both
// satisfy lattice recurrences:
//
//   full({})  = {identity}
//   full(M)   = union over distinct g in M of  full(M - g) * g
//   all(M)    = full(M)  union  all(M - g) over distinct g,   all({}) = {}
//
// Sets are uint64 bitmasks over element ids, which caps the order at 64.
// Cache keys pack the sorted ids at 6 bits each behind a length marker bit,
// which caps multisets at 21 terms. One engine amortizes the lattice across
// every query made through it, so searches that probe many overlapping
// multisets should share a single instance.
class ProductSetEngine {
 public:
  explicit ProductSetEngine(GroupTable table) : g_(std::move(table)) {
    if (g_.order < 1 || g_.order > 64)
      throw std::domain_error("product engine supports group orders 1..64, got " +
                              std::to_string(g_.order));
    inverse_.assign(static_cast<std::size_t>(g_.order), -1);
    for (int a = 0; a < g_.order; ++a)
      for (int b = 0; b < g_.order; ++b)
        if (g_.mul(a, b) == g_.identity) inverse_[static_cast<std::size_t>(a)] = b;
    for (int a = 0; a < g_.order; ++a)
      if (inverse_[static_cast<std::size_t>(a)] < 0)
        throw std::domain_error("element " + std::to_string(a) + " has no inverse");
  }

  // ids must be sorted ascending, each in [0, order).
  std::uint64_t full_products(const std::vector<int>& ids) { return compute(ids).full; }
  std::uint64_t all_products(const std::vector<int>& ids) { return compute(ids).all; }

  bool product_one_free(const std::vector<int>& ids) {
    return (all_products(ids) >> g_.identity & 1) == 0;
  }

  // An ordering of a nonempty sub-multiset whose product is the identity, or
  // empty when the multiset is product-one free. The reconstruction first
  // shrinks to a multiset whose full products contain the identity, then
  // peels the last factor, preferring smaller ids at every choice so the
  // result is deterministic.
  std::vector<int> identity_witness(const std::vector<int>& ids) {
    if (product_one_free(ids)) return {};

    std::vector<int> m = ids;
    while ((full_products(m) >> g_.identity & 1) == 0) {
      bool dropped = false;
      for (std::size_t i = 0; i < m.size() && !dropped; ++i) {
        if (i > 0 && m[i] == m[i - 1]) continue;
        std::vector<int> rest = erased(m, i);
        if (!rest.empty() && (all_products(rest) >> g_.identity & 1) != 0) {
          m = std::move(rest);
          dropped = true;
        }
      }
      if (!dropped)
        throw invariant_violation("identity is reachable but no sub-multiset realizes it");
    }

    std::vector<int> ordered;
    std::vector<int> cur = m;
    int target = g_.identity;
    while (!cur.empty()) {
      bool found = false;
      for (std::size_t i = 0; i < cur.size() && !found; ++i) {
        if (i > 0 && cur[i] == cur[i - 1]) continue;
        int g = cur[i];
        int before = g_.mul(target, inverse_[static_cast<std::size_t>(g)]);
        std::vector<int> rest = erased(cur, i);
        if ((full_products(rest) >> before & 1) != 0) {
          ordered.push_back(g);
          target = before;
          cur = std::move(rest);
          found = true;
        }
      }
      if (!found) throw invariant_violation("product witness reconstruction hit a dead end");
    }
    std::reverse(ordered.begin(), ordered.end());
    return ordered;
  }

  std::size_t cache_size() const { return memo_.size(); }
  const GroupTable& table() const { return g_; }

 private:
  struct Entry {
    std::uint64_t full;
    std::uint64_t all;
  };

  using Key = unsigned __int128;

  struct KeyHash {
    std::size_t operator()(Key k) const {
      auto lo = static_cast<std::uint64_t>(k);
      auto hi = static_cast<std::uint64_t>(k >> 64);
      return std::hash<std::uint64_t>{}(lo ^ (hi * 0x100000001b3ULL));
    }
  };

  static Key pack(const std::vector<int>& ids) {
    Key k = Key{1} << (6 * ids.size());
    for (std::size_t i = 0; i < ids.size(); ++i)
      k |= static_cast<Key>(static_cast<unsigned>(ids[i])) << (6 * i);
    return k;
  }

  static std::vector<int> erased(const std::vector<int>& ids, std::size_t at) {
    std::vector<int> rest;
    rest.reserve(ids.size() - 1);
    rest.insert(rest.end(), ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(at));
    rest.insert(rest.end(), ids.begin() + static_cast<std::ptrdiff_t>(at) + 1, ids.end());
    return rest;
  }

  std::uint64_t right_mul(std::uint64_t mask, int g) const {
    std::uint64_t out = 0;
    while (mask != 0) {
      int p = std::countr_zero(mask);
      mask &= mask - 1;
      out |= std::uint64_t{1} << g_.mul(p, g);
    }
    return out;
  }

  Entry compute(const std::vector<int>& ids) {
    if (ids.size() > 21)
      throw std::domain_error("product engine multiset budget is 21 terms, got " +
                              std::to_string(ids.size()));
    Key key = pack(ids);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;

    Entry e{0, 0};
    if (ids.empty()) {
      e.full = std::uint64_t{1} << g_.identity;
    } else {
      for (std::size_t i = 0; i < ids.size(); ++i) {
        if (i > 0 && ids[i] == ids[i - 1]) continue;
        Entry sub = compute(erased(ids, i));
        e.full |= right_mul(sub.full, ids[i]);
        e.all |= sub.all;
      }
      e.all |= e.full;
    }
    memo_.emplace(key, e);
    return e;
  }

  GroupTable g_;
  std::vector<int> inverse_;
  std::unordered_map<Key, Entry, KeyHash> memo_;
};

}  // namespace zsum::detail
