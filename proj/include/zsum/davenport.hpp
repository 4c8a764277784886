#pragma once

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "detail/engine.hpp"
#include "detail/parallel.hpp"
#include "dihedral.hpp"
#include "errors.hpp"

namespace zsum::davenport {

// Abstract finite group for the exhaustive searches. Construction validates
// the table as a group (identity, inverses, associativity), so downstream
// code never re-checks axioms. Orders above 64 are out of budget.
class GroupSpec {
 public:
  static GroupSpec cyclic(int n) {
    if (n < 1) throw std::domain_error("cyclic group order must be >= 1");
    check_order(n);
    detail::GroupTable t{n, 0, std::vector<int>(static_cast<std::size_t>(n) * n)};
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) t.mult[static_cast<std::size_t>(a) * n + b] = (a + b) % n;
    std::vector<std::string> labels;
    labels.reserve(static_cast<std::size_t>(n));
    for (int a = 0; a < n; ++a) labels.push_back(std::to_string(a));
    return GroupSpec("cyclic:" + std::to_string(n), std::move(t), std::move(labels));
  }

  static GroupSpec direct_sum(const std::vector<int>& ns) {
    if (ns.empty()) throw std::domain_error("direct sum needs at least one cyclic factor");
    long long order = 1;
    for (int n : ns) {
      if (n < 2) throw std::domain_error("direct sum factors must be >= 2");
      order *= n;
      if (order > 64) break;
    }
    check_order(order);
    int ord = static_cast<int>(order);

    // id encoding is mixed-radix with the first factor most significant, so
    // ascending ids match lexicographic order on component tuples.
    auto decode = [&](int id) {
      std::vector<int> c(ns.size());
      for (std::size_t i = ns.size(); i-- > 0;) {
        c[i] = id % ns[i];
        id /= ns[i];
      }
      return c;
    };
    auto encode = [&](const std::vector<int>& c) {
      int id = 0;
      for (std::size_t i = 0; i < ns.size(); ++i) id = id * ns[i] + c[i];
      return id;
    };

    detail::GroupTable t{ord, 0, std::vector<int>(static_cast<std::size_t>(ord) * ord)};
    for (int a = 0; a < ord; ++a) {
      auto ca = decode(a);
      for (int b = 0; b < ord; ++b) {
        auto cb = decode(b);
        std::vector<int> cc(ns.size());
        for (std::size_t i = 0; i < ns.size(); ++i) cc[i] = (ca[i] + cb[i]) % ns[i];
        t.mult[static_cast<std::size_t>(a) * ord + b] = encode(cc);
      }
    }

    std::vector<std::string> labels;
    labels.reserve(static_cast<std::size_t>(ord));
    for (int a = 0; a < ord; ++a) {
      auto c = decode(a);
      std::string l = "(";
      for (std::size_t i = 0; i < c.size(); ++i) {
        if (i > 0) l += ",";
        l += std::to_string(c[i]);
      }
      l += ")";
      labels.push_back(std::move(l));
    }

    std::string name = "sum:";
    for (std::size_t i = 0; i < ns.size(); ++i) {
      if (i > 0) name += "x";
      name += std::to_string(ns[i]);
    }
    return GroupSpec(std::move(name), std::move(t), std::move(labels));
  }

  static GroupSpec dihedral(int n) {
    if (n < 3) throw std::domain_error("dihedral groups need n >= 3, got n=" + std::to_string(n));
    check_order(2LL * n);
    core::Modulus m(n);
    detail::GroupTable t = zsum::dihedral::dihedral_table(m);
    std::vector<std::string> labels;
    labels.reserve(static_cast<std::size_t>(2 * n));
    for (int id = 0; id < 2 * n; ++id)
      labels.push_back(zsum::dihedral::DihedralElement::from_id(id, m).label());
    return GroupSpec("dihedral:" + std::to_string(n), std::move(t), std::move(labels));
  }

  // CLI names: cyclic:<n>, sum:<n1>x<n2>[x...], dihedral:<n>.
  static GroupSpec from_name(std::string_view name) {
    auto colon = name.find(':');
    if (colon == std::string_view::npos)
      throw parse_error("group name needs the form kind:<parameters>, got \"" +
                        std::string(name) + "\"");
    std::string_view kind = name.substr(0, colon);
    std::string_view rest = name.substr(colon + 1);
    auto read_int = [&](std::string_view s) -> int {
      int v = 0;
      auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
      if (ec != std::errc{} || ptr != s.data() + s.size())
        throw parse_error("expected an integer in group name, got \"" + std::string(s) + "\"");
      return v;
    };
    if (kind == "cyclic") return cyclic(read_int(rest));
    if (kind == "dihedral") return dihedral(read_int(rest));
    if (kind == "sum") {
      std::vector<int> ns;
      std::size_t start = 0;
      while (start <= rest.size()) {
        auto x = rest.find('x', start);
        if (x == std::string_view::npos) {
          ns.push_back(read_int(rest.substr(start)));
          break;
        }
        ns.push_back(read_int(rest.substr(start, x - start)));
        start = x + 1;
      }
      return direct_sum(ns);
    }
    throw parse_error("unknown group kind \"" + std::string(kind) +
                      "\" (expected cyclic, sum, or dihedral)");
  }

  const std::string& name() const { return name_; }
  int order() const { return table_.order; }
  int identity() const { return table_.identity; }
  int mul(int a, int b) const { return table_.mul(a, b); }
  const std::string& label(int id) const { return labels_[static_cast<std::size_t>(id)]; }
  bool abelian() const { return abelian_; }
  const detail::GroupTable& table() const { return table_; }

 private:
  GroupSpec(std::string name, detail::GroupTable t, std::vector<std::string> labels)
      : name_(std::move(name)), table_(std::move(t)), labels_(std::move(labels)) {
    validate();
    abelian_ = true;
    for (int a = 0; a < table_.order && abelian_; ++a)
      for (int b = a + 1; b < table_.order; ++b)
        if (table_.mul(a, b) != table_.mul(b, a)) {
          abelian_ = false;
          break;
        }
  }

  static void check_order(long long order) {
    if (order > 64)
      throw std::domain_error("group order budget is 64, got " + std::to_string(order));
  }

  void validate() const {
    int n = table_.order;
    if (n < 1 || table_.identity < 0 || table_.identity >= n ||
        table_.mult.size() != static_cast<std::size_t>(n) * n)
      throw std::domain_error("malformed group table");
    for (int v : table_.mult)
      if (v < 0 || v >= n) throw std::domain_error("group table entry out of range");
    for (int a = 0; a < n; ++a)
      if (table_.mul(a, table_.identity) != a || table_.mul(table_.identity, a) != a)
        throw std::domain_error("declared identity is not an identity");
    for (int a = 0; a < n; ++a) {
      bool has_inverse = false;
      for (int b = 0; b < n && !has_inverse; ++b)
        has_inverse = table_.mul(a, b) == table_.identity;
      if (!has_inverse)
        throw std::domain_error("element " + std::to_string(a) + " has no inverse");
    }
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          if (table_.mul(table_.mul(a, b), c) != table_.mul(a, table_.mul(b, c)))
            throw std::domain_error("group table is not associative");
  }

  std::string name_;
  detail::GroupTable table_;
  std::vector<std::string> labels_;
  bool abelian_ = false;
};

struct DavenportResult {
  // Longest product-one free length found within max_len. bounded means the
  // search also ruled out length d+1, certifying d(G) = d; when the budget
  // itself was reached the question stays open and bounded is false.
  int d;
  std::vector<int> extremal_example;
  long long search_space_size;
  bool bounded;
};

namespace detail_impl {

struct ChunkBest {
  int len = 0;
  std::vector<int> example;
  long long nodes = 0;
};

// Non-abelian chunk: DFS over nondecreasing id multisets rooted at first_id,
// testing freeness through the shared-lattice engine. The first multiset
// found at a new depth is the lexicographically least one at that depth.
inline ChunkBest search_chunk_engine(const GroupSpec& g, int first_id, int max_len) {
  detail::ProductSetEngine engine(g.table());
  ChunkBest best;
  std::vector<int> ids{first_id};
  auto rec = [&](auto&& self) -> void {
    ++best.nodes;
    if (!engine.product_one_free(ids)) return;
    if (static_cast<int>(ids.size()) > best.len) {
      best.len = static_cast<int>(ids.size());
      best.example = ids;
    }
    if (static_cast<int>(ids.size()) == max_len) return;
    for (int e = ids.back(); e < g.order(); ++e) {
      ids.push_back(e);
      self(self);
      ids.pop_back();
    }
  };
  rec(rec);
  return best;
}

// Abelian chunk: products are order-independent, so the reachable set of
// nonempty subsequence products folds incrementally along the DFS path as
// reach' = reach | reach*e | {e}, one uint64 mask per node.
inline ChunkBest search_chunk_abelian(const GroupSpec& g, int first_id, int max_len) {
  ChunkBest best;
  std::vector<int> ids{first_id};
  auto extend = [&](std::uint64_t reach, int e) {
    std::uint64_t out = reach | (std::uint64_t{1} << e);
    std::uint64_t m = reach;
    while (m != 0) {
      int p = std::countr_zero(m);
      m &= m - 1;
      out |= std::uint64_t{1} << g.mul(p, e);
    }
    return out;
  };
  auto rec = [&](auto&& self, std::uint64_t reach) -> void {
    ++best.nodes;
    if ((reach >> g.identity() & 1) != 0) return;
    if (static_cast<int>(ids.size()) > best.len) {
      best.len = static_cast<int>(ids.size());
      best.example = ids;
    }
    if (static_cast<int>(ids.size()) == max_len) return;
    for (int e = ids.back(); e < g.order(); ++e) {
      ids.push_back(e);
      self(self, extend(reach, e));
      ids.pop_back();
    }
  };
  rec(rec, std::uint64_t{1} << first_id);
  return best;
}

}  // namespace detail_impl

// Exhaustive search for the longest product-one free multiset of length at
// most max_len. Extends only free prefixes, which is sound because every
// sub-multiset of a free multiset is free. Chunks are split by first element
// id; merging takes the deepest result, ties going to the earliest chunk, so
// the reported example is the lexicographically least extremal multiset.
inline DavenportResult davenport_search(const GroupSpec& g, int max_len, int jobs = 1) {
  if (g.order() < 2)
    throw std::domain_error("davenport search needs a group of order >= 2");
  if (max_len < 1) throw std::domain_error("max_len must be >= 1");
  int budget = g.abelian() ? 63 : 21;
  if (max_len > budget)
    throw std::domain_error("max_len " + std::to_string(max_len) +
                            " exceeds the search budget " + std::to_string(budget) +
                            " for this group");

  std::vector<detail_impl::ChunkBest> slots(static_cast<std::size_t>(g.order()));
  detail::run_chunks(g.order(), jobs, [&](int first) {
    slots[static_cast<std::size_t>(first)] =
        g.abelian() ? detail_impl::search_chunk_abelian(g, first, max_len)
                    : detail_impl::search_chunk_engine(g, first, max_len);
  });

  DavenportResult result{0, {}, 0, false};
  for (const auto& chunk : slots) {
    result.search_space_size += chunk.nodes;
    if (chunk.len > result.d) {
      result.d = chunk.len;
      result.extremal_example = chunk.example;
    }
  }
  result.bounded = result.d < max_len;
  return result;
}

struct AbelianBound {
  long long bound;
  std::vector<long long> witness_ids;
};

// Lower bound sum(n_i - 1) for a direct sum of cyclic groups, with the
// standard witness that repeats each generator n_i - 1 times. Witness ids
// use the direct_sum encoding above.
inline AbelianBound abelian_lower_bound(const std::vector<int>& ns) {
  if (ns.empty()) throw std::domain_error("direct sum needs at least one cyclic factor");
  long long bound = 0;
  for (int n : ns) {
    if (n < 2) throw std::domain_error("direct sum factors must be >= 2");
    bound += n - 1;
  }
  AbelianBound out{bound, {}};
  long long stride = 1;
  std::vector<long long> strides(ns.size());
  for (std::size_t i = ns.size(); i-- > 0;) {
    strides[i] = stride;
    stride *= ns[i];
  }
  for (std::size_t i = 0; i < ns.size(); ++i)
    for (int r = 0; r < ns[i] - 1; ++r) out.witness_ids.push_back(strides[i]);
  std::sort(out.witness_ids.begin(), out.witness_ids.end());
  return out;
}

}  // namespace zsum::davenport
