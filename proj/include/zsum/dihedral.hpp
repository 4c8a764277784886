#pragma once

#include <algorithm>
#include <charconv>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "core.hpp"
#include "detail/engine.hpp"
#include "errors.hpp"

namespace zsum::dihedral {

// Element of D_2n in the normal form x^eps y^rot, where x is a reflection
// (x^2 = 1), y generates the rotations (y^n = 1) and y x = x y^-1. The pair
// (eps, rot) is unique, so equality is field-wise.
class DihedralElement {
 public:
  DihedralElement(bool reflection, long long rotation, core::Modulus m)
      : refl_(reflection), rot_(core::mod_floor(rotation, m.value())), mod_(m) {
    if (m.value() < 3)
      throw std::domain_error("dihedral groups need n >= 3, got n=" +
                              std::to_string(m.value()));
  }

  static DihedralElement identity(core::Modulus m) { return {false, 0, m}; }

  // ids order the rotations y^0..y^{n-1} first, then the reflections
  // x y^0..x y^{n-1}; the identity is id 0.
  static DihedralElement from_id(int id, core::Modulus m) {
    int n = m.value();
    if (id < 0 || id >= 2 * n)
      throw std::domain_error("dihedral element id out of range: " + std::to_string(id));
    return {id >= n, id % n, m};
  }

  bool reflection() const { return refl_; }
  int rotation() const { return rot_; }
  core::Modulus modulus() const { return mod_; }

  int id() const { return (refl_ ? mod_.value() : 0) + rot_; }

  std::string label() const { return (refl_ ? "s" : "r") + std::to_string(rot_); }

  friend bool operator==(const DihedralElement& a, const DihedralElement& b) {
    return a.refl_ == b.refl_ && a.rot_ == b.rot_ && a.mod_ == b.mod_;
  }

  friend bool operator<(const DihedralElement& a, const DihedralElement& b) {
    if (!(a.mod_ == b.mod_)) return a.mod_.value() < b.mod_.value();
    return a.id() < b.id();
  }

 private:
  bool refl_;
  int rot_;
  core::Modulus mod_;
};

// Normal-form product: (e_u, a)(e_v, b) = (e_u + e_v, (-1)^{e_v} a + b).
// Everything else about the group falls out of this one formula.
inline DihedralElement dihedral_mul(const DihedralElement& u, const DihedralElement& v) {
  if (!(u.modulus() == v.modulus()))
    throw std::domain_error("cannot multiply dihedral elements over different n");
  long long a = v.reflection() ? -static_cast<long long>(u.rotation()) : u.rotation();
  return DihedralElement(u.reflection() != v.reflection(), a + v.rotation(), u.modulus());
}

inline detail::GroupTable dihedral_table(core::Modulus m) {
  int order = 2 * m.value();
  detail::GroupTable t{order, 0, std::vector<int>(static_cast<std::size_t>(order) * order)};
  for (int a = 0; a < order; ++a)
    for (int b = 0; b < order; ++b)
      t.mult[static_cast<std::size_t>(a) * order + b] =
          dihedral_mul(DihedralElement::from_id(a, m), DihedralElement::from_id(b, m)).id();
  return t;
}

// Unordered multiset of dihedral elements, keyed by element id.
class DihedralSequence {
 public:
  explicit DihedralSequence(core::Modulus m) : mod_(m) {
    if (m.value() < 3)
      throw std::domain_error("dihedral groups need n >= 3, got n=" +
                              std::to_string(m.value()));
  }

  static DihedralSequence from_id_counts(core::Modulus m, const std::map<int, int>& counts) {
    DihedralSequence s(m);
    for (auto [id, count] : counts) {
      if (id < 0 || id >= 2 * m.value())
        throw std::domain_error("dihedral element id out of range: " + std::to_string(id));
      if (count < 0)
        throw std::domain_error("multiplicity of element id " + std::to_string(id) +
                                " is negative");
      if (count > 0) {
        s.counts_[id] += count;
        s.length_ += count;
      }
    }
    return s;
  }

  static DihedralSequence from_ids(core::Modulus m, const std::vector<int>& ids) {
    std::map<int, int> counts;
    for (int id : ids) ++counts[id];
    return from_id_counts(m, counts);
  }

  core::Modulus modulus() const { return mod_; }
  int length() const { return length_; }
  bool empty() const { return length_ == 0; }
  const std::map<int, int>& counts() const { return counts_; }

  std::vector<int> sorted_ids() const {
    std::vector<int> ids;
    ids.reserve(static_cast<std::size_t>(length_));
    for (auto [id, count] : counts_)
      for (int i = 0; i < count; ++i) ids.push_back(id);
    return ids;
  }

  std::vector<DihedralElement> terms() const {
    std::vector<DihedralElement> out;
    out.reserve(static_cast<std::size_t>(length_));
    for (int id : sorted_ids()) out.push_back(DihedralElement::from_id(id, mod_));
    return out;
  }

  friend bool operator==(const DihedralSequence& a, const DihedralSequence& b) {
    return a.mod_ == b.mod_ && a.counts_ == b.counts_;
  }

  friend bool operator<(const DihedralSequence& a, const DihedralSequence& b) {
    if (!(a.mod_ == b.mod_)) return a.mod_.value() < b.mod_.value();
    return a.counts_ < b.counts_;
  }

 private:
  core::Modulus mod_;
  std::map<int, int> counts_;
  int length_ = 0;
};

// Grammar: `D n=<int>: term(,term)*` or `D n=<int>:`, where a term is
// r<int> for the rotation y^a or s<int> for the reflection x y^a.
inline DihedralSequence parse_dihedral_sequence(std::string_view text) {
  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
  };
  auto token_here = [&]() -> std::string {
    if (pos >= text.size()) return "end of input";
    std::size_t end = pos;
    while (end < text.size() && text[end] != ' ' && text[end] != '\t' &&
           text[end] != ',' && text[end] != ':')
      ++end;
    if (end == pos) end = pos + 1;
    return std::string(text.substr(pos, end - pos));
  };
  auto parse_int = [&](const char* what) -> long long {
    skip_ws();
    long long v = 0;
    auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + text.size(), v);
    if (ec != std::errc{})
      throw parse_error(std::string("expected ") + what + ", got \"" + token_here() + "\"");
    pos = static_cast<std::size_t>(ptr - text.data());
    return v;
  };

  skip_ws();
  if (pos >= text.size() || text[pos] != 'D')
    throw parse_error("dihedral sequence must start with \"D\", got \"" + token_here() + "\"");
  ++pos;
  skip_ws();
  if (text.substr(pos, 2) != "n=")
    throw parse_error("expected \"n=\" after \"D\", got \"" + token_here() + "\"");
  pos += 2;
  long long n = parse_int("group parameter n");
  if (n < 3 || n > 500000)
    throw std::domain_error("dihedral n must be in [3, 500000], got " + std::to_string(n));
  skip_ws();
  if (pos >= text.size() || text[pos] != ':')
    throw parse_error("expected ':' after the group parameter, got \"" + token_here() + "\"");
  ++pos;

  core::Modulus m(static_cast<int>(n));
  std::map<int, int> counts;
  skip_ws();
  if (pos < text.size()) {
    while (true) {
      skip_ws();
      char kind = pos < text.size() ? text[pos] : '\0';
      if (kind != 'r' && kind != 's')
        throw parse_error("expected a term r<int> or s<int>, got \"" + token_here() + "\"");
      ++pos;
      long long a = parse_int("rotation exponent");
      int rot = core::mod_floor(a, m.value());
      ++counts[(kind == 's' ? m.value() : 0) + rot];
      skip_ws();
      if (pos >= text.size()) break;
      if (text[pos] != ',')
        throw parse_error("expected ',' between terms, got \"" + token_here() + "\"");
      ++pos;
    }
  }
  return DihedralSequence::from_id_counts(m, counts);
}

// Canonical form: rotations before reflections, exponents ascending,
// multiplicities expanded. Parses back to an equal sequence.
inline std::string format_dihedral_sequence(const DihedralSequence& s) {
  std::string out = "D n=" + std::to_string(s.modulus().value()) + ":";
  bool first = true;
  for (int id : s.sorted_ids()) {
    out += first ? " " : ",";
    out += DihedralElement::from_id(id, s.modulus()).label();
    first = false;
  }
  return out;
}

struct ProductWitness {
  std::vector<DihedralElement> ordered_terms;
  DihedralElement product;
};

namespace detail_impl {

inline std::set<DihedralElement> mask_to_set(std::uint64_t mask, core::Modulus m) {
  std::set<DihedralElement> out;
  while (mask != 0) {
    int id = std::countr_zero(mask);
    mask &= mask - 1;
    out.insert(DihedralElement::from_id(id, m));
  }
  return out;
}

}  // namespace detail_impl

// Products of all |S| terms over every ordering of S.
inline std::set<DihedralElement> pi_products(const DihedralSequence& s) {
  if (s.empty()) throw std::domain_error("products of the empty sequence are undefined");
  zsum::detail::ProductSetEngine engine(dihedral_table(s.modulus()));
  return detail_impl::mask_to_set(engine.full_products(s.sorted_ids()), s.modulus());
}

// Union of pi_products over every nonempty sub-multiset of S.
inline std::set<DihedralElement> big_pi(const DihedralSequence& s) {
  if (s.empty()) throw std::domain_error("products of the empty sequence are undefined");
  zsum::detail::ProductSetEngine engine(dihedral_table(s.modulus()));
  return detail_impl::mask_to_set(engine.all_products(s.sorted_ids()), s.modulus());
}

struct ProductOneCheck {
  bool free;
  std::optional<ProductWitness> witness;
};

inline ProductOneCheck is_product_one_free(const DihedralSequence& s) {
  if (s.empty()) throw std::domain_error("product-one freeness of the empty sequence is undefined");
  zsum::detail::ProductSetEngine engine(dihedral_table(s.modulus()));
  std::vector<int> ids = s.sorted_ids();
  if (engine.product_one_free(ids)) return {true, std::nullopt};

  std::vector<int> ordered = engine.identity_witness(ids);
  std::vector<DihedralElement> terms;
  terms.reserve(ordered.size());
  for (int id : ordered) terms.push_back(DihedralElement::from_id(id, s.modulus()));

  DihedralElement check = DihedralElement::identity(s.modulus());
  bool started = false;
  for (const auto& t : terms) {
    check = started ? dihedral_mul(check, t) : t;
    started = true;
  }
  if (!started || !(check == DihedralElement::identity(s.modulus())))
    throw invariant_violation("identity witness does not multiply back to the identity");
  return {false, ProductWitness{std::move(terms), DihedralElement::identity(s.modulus())}};
}

struct ClassificationReport {
  int n;
  int found_count;
  int expected_count;
  bool matches_family;
  std::vector<DihedralSequence> extras;
  std::vector<DihedralSequence> missing;
};

// Product-one free multisets of the given length whose least element id is
// exactly `least_id`, in lexicographic id order. Non-free prefixes are
// pruned, which is sound because sub-multisets of free multisets are free.
inline std::vector<DihedralSequence> free_multisets(core::Modulus m, int length,
                                                    int least_id) {
  int order = 2 * m.value();
  if (length < 1 || least_id < 0 || least_id >= order)
    throw std::domain_error("free_multisets needs length >= 1 and a valid element id");
  zsum::detail::ProductSetEngine engine(dihedral_table(m));
  std::vector<DihedralSequence> out;
  std::vector<int> ids{least_id};

  auto rec = [&](auto&& self) -> void {
    if (!engine.product_one_free(ids)) return;
    if (static_cast<int>(ids.size()) == length) {
      out.push_back(DihedralSequence::from_ids(m, ids));
      return;
    }
    for (int g = ids.back(); g < order; ++g) {
      ids.push_back(g);
      self(self);
      ids.pop_back();
    }
  };
  rec(rec);
  return out;
}

// The predicted extremal family at length n: (y^t)^[n-1] . x y^s for every
// unit t and every s, plus the one sporadic member x . xy . xy^2 when n = 3.
inline std::vector<DihedralSequence> classification_family(core::Modulus m) {
  int n = m.value();
  std::vector<DihedralSequence> family;
  for (int t = 1; t < n; ++t) {
    if (std::gcd(t, n) != 1) continue;
    for (int s = 0; s < n; ++s)
      family.push_back(
          DihedralSequence::from_id_counts(m, {{t, n - 1}, {n + s, 1}}));
  }
  if (n == 3)
    family.push_back(DihedralSequence::from_id_counts(m, {{3, 1}, {4, 1}, {5, 1}}));
  std::sort(family.begin(), family.end());
  return family;
}

inline ClassificationReport compare_with_family(core::Modulus m,
                                                const std::vector<DihedralSequence>& found) {
  std::vector<DihedralSequence> family = classification_family(m);
  std::vector<DihedralSequence> sorted_found = found;
  std::sort(sorted_found.begin(), sorted_found.end());

  std::vector<DihedralSequence> extras;
  std::vector<DihedralSequence> missing;
  std::set_difference(sorted_found.begin(), sorted_found.end(), family.begin(), family.end(),
                      std::back_inserter(extras));
  std::set_difference(family.begin(), family.end(), sorted_found.begin(), sorted_found.end(),
                      std::back_inserter(missing));

  return ClassificationReport{m.value(),
                              static_cast<int>(sorted_found.size()),
                              static_cast<int>(family.size()),
                              extras.empty() && missing.empty(),
                              std::move(extras),
                              std::move(missing)};
}

// Enumerates every length-n multiset over D_2n, filters for product-one
// freeness, and compares the survivors with the predicted family.
inline ClassificationReport verify_classification(int n, int budget = 8) {
  if (n < 3 || n > budget)
    throw std::domain_error("classification enumeration supports 3 <= n <= " +
                            std::to_string(budget) + ", got n=" + std::to_string(n));
  core::Modulus m(n);
  std::vector<DihedralSequence> found;
  for (int least = 0; least < 2 * n; ++least) {
    auto part = free_multisets(m, n, least);
    found.insert(found.end(), part.begin(), part.end());
  }
  return compare_with_family(m, found);
}

}  // namespace zsum::dihedral
