#pragma once

#include <ostream>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "core.hpp"
#include "davenport.hpp"
#include "dihedral.hpp"
#include "normalizer.hpp"
#include "subsum.hpp"

namespace zsum::report {

// Comma-joined terms without the grammar prefix, e.g. "1,1,2". Used where a
// sub-multiset is shown inline next to its parent sequence.
inline std::string short_terms(const core::ResidueSequence& s) {
  std::string out;
  bool first = true;
  for (auto [value, count] : s.counts())
    for (int i = 0; i < count; ++i) {
      if (!first) out += ",";
      out += std::to_string(value);
      first = false;
    }
  return out;
}

template <typename C>
inline std::string join_numbers(const C& values) {
  std::string out;
  bool first = true;
  for (const auto& v : values) {
    if (!first) out += ",";
    out += std::to_string(v);
    first = false;
  }
  return out;
}

inline const char* yes_no(bool b) { return b ? "true" : "false"; }

// ---- interval theorem ----

inline nlohmann::json theorem_json(const subsum::TheoremReport& r,
                                   const core::ResidueSequence& s) {
  return {{"sequence", core::format_sequence(s)},
          {"n", r.n},
          {"k", r.k},
          {"sigma_bar", r.sigma_bar},
          {"hypotheses_met", r.hypotheses_met},
          {"equality_holds", r.equality_holds},
          {"missing_targets", r.missing_targets},
          {"corollary_holds", r.corollary_holds}};
}

inline void theorem_text(std::ostream& out, const subsum::TheoremReport& r,
                         const core::ResidueSequence& s) {
  out << "sequence: " << core::format_sequence(s) << "\n"
      << "n: " << r.n << "\n"
      << "k: " << r.k << "\n"
      << "sigma_bar: " << r.sigma_bar << "\n"
      << "hypotheses_met: " << yes_no(r.hypotheses_met) << "\n"
      << "equality_holds: " << yes_no(r.equality_holds) << "\n"
      << "missing_targets: "
      << (r.missing_targets.empty() ? "(none)" : join_numbers(r.missing_targets)) << "\n"
      << "corollary_holds: " << yes_no(r.corollary_holds) << "\n";
}

// ---- witness ----

inline nlohmann::json witness_json(const subsum::IntervalWitness& w,
                                   const core::ResidueSequence& s) {
  return {{"sequence", core::format_sequence(s)},
          {"witness", core::format_sequence(w.subsequence)},
          {"target", w.target}};
}

inline void witness_text(std::ostream& out, const subsum::IntervalWitness& w) {
  out << "witness: " << short_terms(w.subsequence) << " (bar-sum " << w.target << ")\n";
}

// ---- normalizer ----

inline nlohmann::json normalizer_json(const normalizer::NormalizerResult& r,
                                      const core::ResidueSequence& s) {
  return {{"sequence", core::format_sequence(s)},
          {"g", r.g},
          {"total", r.total},
          {"achieves_bound", r.achieves_bound},
          {"scaled", core::format_sequence(core::scale(s, r.g))}};
}

inline void normalizer_text(std::ostream& out, const normalizer::NormalizerResult& r,
                            const core::ResidueSequence& s) {
  out << "g: " << r.g << "\n"
      << "total: " << r.total << "\n"
      << "achieves_bound: " << yes_no(r.achieves_bound) << "\n"
      << "scaled: " << core::format_sequence(core::scale(s, r.g)) << "\n";
}

// ---- multiplicity bound ----

inline nlohmann::json bound_json(const normalizer::BoundReport& r,
                                 const core::ResidueSequence& s) {
  return {{"sequence", core::format_sequence(s)},
          {"n", r.n},
          {"k", r.k},
          {"regime", std::string(normalizer::regime_name(r.regime))},
          {"required", r.required},
          {"achieved", r.achieved},
          {"holds", r.holds}};
}

inline void bound_text(std::ostream& out, const normalizer::BoundReport& r) {
  out << "n: " << r.n << "\n"
      << "k: " << r.k << "\n"
      << "regime: " << normalizer::regime_name(r.regime) << "\n"
      << "required: " << r.required << "\n"
      << "achieved: " << r.achieved << "\n"
      << "holds: " << yes_no(r.holds) << "\n";
}

// ---- sums query ----

inline nlohmann::json sums_json(const core::ResidueSequence& s) {
  auto totals = core::sums(s);
  auto mod = subsum::subsums_mod(s);
  auto ints = subsum::subsums_int(s);
  return {{"sequence", core::format_sequence(s)},
          {"length", s.length()},
          {"sigma_mod", totals.sigma_mod.value()},
          {"sigma_bar", totals.sigma_bar},
          {"zero_sum_free", mod.members.count(0) == 0},
          {"subsums_mod", mod.members},
          {"subsums_int", ints.members}};
}

inline void sums_text(std::ostream& out, const core::ResidueSequence& s) {
  auto totals = core::sums(s);
  auto mod = subsum::subsums_mod(s);
  auto ints = subsum::subsums_int(s);
  out << "sequence: " << core::format_sequence(s) << "\n"
      << "length: " << s.length() << "\n"
      << "sigma_mod: " << totals.sigma_mod.value() << "\n"
      << "sigma_bar: " << totals.sigma_bar << "\n"
      << "zero_sum_free: " << yes_no(mod.members.count(0) == 0) << "\n"
      << "subsums_mod: " << (mod.members.empty() ? "(none)" : join_numbers(mod.members))
      << "\n"
      << "subsums_int: " << (ints.members.empty() ? "(none)" : join_numbers(ints.members))
      << "\n";
}

// ---- classification ----

inline nlohmann::json classification_json(const dihedral::ClassificationReport& r) {
  std::vector<std::string> extras;
  std::vector<std::string> missing;
  for (const auto& s : r.extras) extras.push_back(dihedral::format_dihedral_sequence(s));
  for (const auto& s : r.missing) missing.push_back(dihedral::format_dihedral_sequence(s));
  return {{"n", r.n},
          {"found_count", r.found_count},
          {"expected_count", r.expected_count},
          {"matches_family", r.matches_family},
          {"extras", extras},
          {"missing", missing}};
}

inline void classification_text(std::ostream& out, const dihedral::ClassificationReport& r) {
  out << "n: " << r.n << "\n"
      << "found_count: " << r.found_count << "\n"
      << "expected_count: " << r.expected_count << "\n"
      << "matches_family: " << yes_no(r.matches_family) << "\n";
  for (const auto& s : r.extras)
    out << "extra: " << dihedral::format_dihedral_sequence(s) << "\n";
  for (const auto& s : r.missing)
    out << "missing: " << dihedral::format_dihedral_sequence(s) << "\n";
}

// ---- davenport ----

inline nlohmann::json davenport_json(const davenport::GroupSpec& g, int max_len,
                                     const davenport::DavenportResult& r) {
  std::vector<std::string> example;
  for (int id : r.extremal_example) example.push_back(g.label(id));
  return {{"group", g.name()},
          {"order", g.order()},
          {"max_len", max_len},
          {"d", r.d},
          {"bounded", r.bounded},
          {"extremal_example", example},
          {"search_space_size", r.search_space_size}};
}

inline void davenport_text(std::ostream& out, const davenport::GroupSpec& g, int max_len,
                           const davenport::DavenportResult& r) {
  out << "group: " << g.name() << "\n"
      << "order: " << g.order() << "\n"
      << "max_len: " << max_len << "\n"
      << "d: " << r.d << "\n"
      << "bounded: " << yes_no(r.bounded) << "\n";
  out << "extremal_example: ";
  for (std::size_t i = 0; i < r.extremal_example.size(); ++i)
    out << (i > 0 ? "," : "") << g.label(r.extremal_example[i]);
  out << "\n"
      << "search_space_size: " << r.search_space_size << "\n";
  if (!r.bounded)
    out << "note: every length up to max_len admits a product-one free multiset; "
           "raise --max-len to certify d\n";
}

}  // namespace zsum::report
