#pragma once

#include <charconv>
#include <initializer_list>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>

#include "errors.hpp"

namespace zsum::core {

// value mod n with the result in [0, n); correct for negative inputs.
inline int mod_floor(long long value, int n) {
  long long r = value % n;
  if (r < 0) r += n;
  return static_cast<int>(r);
}

class Modulus {
 public:
  explicit Modulus(int n) : n_(n) {
    if (n < 2)
      throw std::domain_error("modulus must be at least 2, got " + std::to_string(n));
  }

  int value() const { return n_; }

  friend bool operator==(Modulus a, Modulus b) { return a.n_ == b.n_; }

 private:
  int n_;
};

class Residue {
 public:
  Residue(long long value, Modulus m) : value_(mod_floor(value, m.value())), mod_(m) {}

  int value() const { return value_; }
  Modulus modulus() const { return mod_; }

  // Least positive integer in the congruence class; the zero class maps to n.
  int bar() const { return value_ == 0 ? mod_.value() : value_; }

  friend bool operator==(const Residue& a, const Residue& b) {
    return a.value_ == b.value_ && a.mod_ == b.mod_;
  }

 private:
  int value_;
  Modulus mod_;
};

inline int bar(const Residue& r) { return r.bar(); }

// Unordered multiset of residues mod n. Two sequences are equal exactly when
// their multiplicity maps agree; no zero-count entries are ever stored.
class ResidueSequence {
 public:
  explicit ResidueSequence(Modulus m) : mod_(m) {}

  ResidueSequence(Modulus m, std::initializer_list<int> terms) : mod_(m) {
    for (int t : terms) bump(mod_floor(t, m.value()), 1);
  }

  static ResidueSequence from_counts(Modulus m, const std::map<int, int>& counts) {
    ResidueSequence s(m);
    for (auto [value, count] : counts) {
      if (count < 0)
        throw std::domain_error("multiplicity of " + std::to_string(value) +
                                " is negative");
      s.bump(mod_floor(value, m.value()), count);
    }
    return s;
  }

  Modulus modulus() const { return mod_; }
  int length() const { return length_; }
  bool empty() const { return length_ == 0; }

  const std::map<int, int>& counts() const { return counts_; }

  int multiplicity_of(int value) const {
    auto it = counts_.find(mod_floor(value, mod_.value()));
    return it == counts_.end() ? 0 : it->second;
  }

  int max_multiplicity() const {
    int best = 0;
    for (auto [value, count] : counts_) {
      (void)value;
      if (count > best) best = count;
    }
    return best;
  }

  bool divides(const ResidueSequence& super) const {
    if (!(mod_ == super.mod_)) return false;
    for (auto [value, count] : counts_)
      if (super.multiplicity_of(value) < count) return false;
    return true;
  }

  ResidueSequence with_term(int value, int count = 1) const {
    ResidueSequence s = *this;
    s.bump(mod_floor(value, mod_.value()), count);
    return s;
  }

  friend bool operator==(const ResidueSequence& a, const ResidueSequence& b) {
    return a.mod_ == b.mod_ && a.counts_ == b.counts_;
  }

 private:
  void bump(int value, int count) {
    if (count == 0) return;
    counts_[value] += count;
    length_ += count;
  }

  Modulus mod_;
  std::map<int, int> counts_;
  int length_ = 0;
};

// Grammar: `n=<int>: <int>(,<int>)*` or `n=<int>:` for the empty sequence.
// Entries may be any integers; they are reduced mod n.
inline ResidueSequence parse_sequence(std::string_view text) {
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
  if (text.substr(pos, 2) != "n=")
    throw parse_error("sequence must start with \"n=\", got \"" + token_here() + "\"");
  pos += 2;
  long long n = parse_int("modulus");
  if (n < 2 || n > 1000000)
    throw std::domain_error("modulus must be in [2, 1000000], got " + std::to_string(n));
  skip_ws();
  if (pos >= text.size() || text[pos] != ':')
    throw parse_error("expected ':' after modulus, got \"" + token_here() + "\"");
  ++pos;

  Modulus m(static_cast<int>(n));
  std::map<int, int> counts;
  skip_ws();
  if (pos < text.size()) {
    while (true) {
      long long v = parse_int("residue");
      ++counts[mod_floor(v, m.value())];
      skip_ws();
      if (pos >= text.size()) break;
      if (text[pos] != ',')
        throw parse_error("expected ',' between residues, got \"" + token_here() + "\"");
      ++pos;
    }
  }
  return ResidueSequence::from_counts(m, counts);
}

// Canonical form: ascending residues with multiplicities expanded, so equal
// sequences format identically and the output parses back (round-trip).
inline std::string format_sequence(const ResidueSequence& s) {
  std::string out = "n=" + std::to_string(s.modulus().value()) + ":";
  bool first = true;
  for (auto [value, count] : s.counts())
    for (int i = 0; i < count; ++i) {
      out += first ? " " : ",";
      out += std::to_string(value);
      first = false;
    }
  return out;
}

// Term-wise multiplication by g. Requires gcd(g, n) = 1 so that the map is a
// bijection of Z_n and multiplicities transfer unchanged.
inline ResidueSequence scale(const ResidueSequence& s, long long g) {
  int n = s.modulus().value();
  int gr = mod_floor(g, n);
  if (std::gcd(gr, n) != 1)
    throw std::domain_error("scale factor " + std::to_string(g) + " is not a unit mod " +
                            std::to_string(n));
  std::map<int, int> scaled;
  for (auto [value, count] : s.counts())
    scaled[mod_floor(static_cast<long long>(gr) * value, n)] += count;
  return ResidueSequence::from_counts(s.modulus(), scaled);
}

struct SequenceSums {
  Residue sigma_mod;
  long long sigma_bar;
};

inline SequenceSums sums(const ResidueSequence& s) {
  long long total = 0;
  long long total_bar = 0;
  for (auto [value, count] : s.counts()) {
    total += static_cast<long long>(value) * count;
    total_bar += static_cast<long long>(Residue(value, s.modulus()).bar()) * count;
  }
  return {Residue(total, s.modulus()), total_bar};
}

}  // namespace zsum::core
