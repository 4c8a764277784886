#pragma once

#include <algorithm>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "core.hpp"
#include "davenport.hpp"
#include "dihedral.hpp"
#include "errors.hpp"
#include "normalizer.hpp"
#include "report.hpp"
#include "subsum.hpp"
#include "sweep.hpp"

namespace zsum::cli {

namespace cli_detail {

// Malformed input exits 2; a computation that finds the claim false or a
// hypothesis violated exits 1. This wrapper implements the second half.
template <typename Fn>
inline int compute(std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const invariant_violation& e) {
    err << "internal invariant violation: " << e.what() << "\n";
    return 1;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace cli_detail

inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"subsequence sums over Z_n and product-one sequences in dihedral groups",
               "zsum"};
  app.require_subcommand(1);

  auto add_format = [](CLI::App* cmd, std::string& fmt) {
    cmd->add_option("--format", fmt, "output format")
        ->check(CLI::IsMember({"text", "json"}));
  };

  auto* verify = app.add_subcommand("verify", "check a statement against one sequence");
  verify->require_subcommand(1);

  std::string vt_seq;
  int vt_k = 0;
  std::string vt_fmt = "text";
  auto* vt = verify->add_subcommand(
      "theorem", "subsequence sums fill the whole interval [1, bar-sum]");
  vt->add_option("sequence", vt_seq, "sequence, e.g. \"n=7: 1,1,1,2\"")->required();
  vt->add_option("--k", vt_k, "codimension; the length must be n-k")->required();
  add_format(vt, vt_fmt);

  std::string vb_seq;
  int vb_k = 0;
  std::string vb_fmt = "text";
  auto* vb = verify->add_subcommand("bound",
                                    "some value reaches the regime multiplicity bound");
  vb->add_option("sequence", vb_seq, "zero-sum free sequence of length n-k")->required();
  vb->add_option("--k", vb_k, "codimension; the length must be n-k")->required();
  add_format(vb, vb_fmt);

  std::string nm_seq;
  std::string nm_fmt = "text";
  auto* nm = app.add_subcommand("normalize",
                                "find a unit scaling the bar-sum down to at most n-1");
  nm->add_option("sequence", nm_seq, "zero-sum free sequence with length above n/2")
      ->required();
  add_format(nm, nm_fmt);

  std::string dc_seq;
  long long dc_t = 0;
  std::string dc_fmt = "text";
  auto* dc = app.add_subcommand("decompose", "sub-multiset whose bar values sum to t");
  dc->add_option("sequence", dc_seq, "sequence meeting the interval hypotheses")->required();
  dc->add_option("--t", dc_t, "target in [1, bar-sum]")->required();
  add_format(dc, dc_fmt);

  std::string sm_seq;
  std::string sm_fmt = "text";
  auto* sm = app.add_subcommand("sums", "bar-sum and both subsequence-sum sets");
  sm->add_option("sequence", sm_seq, "sequence, e.g. \"n=5: 2,2\"")->required();
  add_format(sm, sm_fmt);

  auto* dh = app.add_subcommand("dihedral", "product-one structure in D_2n");
  dh->require_subcommand(1);
  int cl_n = 0;
  std::string cl_fmt = "text";
  auto* cl = dh->add_subcommand(
      "classify", "enumerate maximal product-one free sequences and match the family");
  cl->add_option("n", cl_n, "rotation order of D_2n")->required()->check(CLI::Range(3, 8));
  add_format(cl, cl_fmt);

  std::string dv_group;
  int dv_max_len = 0;
  int dv_jobs = 1;
  std::string dv_fmt = "text";
  auto* dv = app.add_subcommand("davenport",
                                "longest product-one free sequence by exhaustive search");
  dv->add_option("group", dv_group, "cyclic:<n>, sum:<n1>x<n2>..., or dihedral:<n>")
      ->required();
  dv->add_option("--max-len", dv_max_len, "search budget (default: group order, capped)")
      ->check(CLI::Range(1, 63));
  dv->add_option("--jobs", dv_jobs, "worker threads")->check(CLI::Range(1, 256));
  add_format(dv, dv_fmt);

  std::string sw_suite;
  SweepConfig sw_cfg;
  std::string sw_fmt = "text";
  auto* sw = app.add_subcommand("sweep", "exhaustive checks over a family of instances");
  sw->add_option("suite", sw_suite, "which family to sweep")
      ->required()
      ->check(CLI::IsMember({"interval-theorem", "normalizer", "bounds", "classification",
                             "davenport", "oracle-equivalence"}));
  sw->add_option("--max-n", sw_cfg.max_n, "largest modulus (0 picks the suite default)")
      ->check(CLI::Range(0, 63));
  sw->add_option("--jobs", sw_cfg.jobs, "worker threads")->check(CLI::Range(1, 256));
  sw->add_option("--seed", sw_cfg.seed, "echoed into the report");
  sw->add_flag("--timing", sw_cfg.timing, "embed elapsed_ms in the report");
  add_format(sw, sw_fmt);

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("zsum");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  auto parse_input = [&err](const std::string& text) -> std::optional<core::ResidueSequence> {
    try {
      return core::parse_sequence(text);
    } catch (const parse_error& e) {
      err << "error: " << e.what() << "\n";
      return std::nullopt;
    } catch (const std::domain_error& e) {
      err << "error: " << e.what() << "\n";
      return std::nullopt;
    }
  };

  if (vt->parsed()) {
    auto s = parse_input(vt_seq);
    if (!s) return 2;
    return cli_detail::compute(err, [&] {
      auto rep = subsum::verify_interval_theorem(*s, vt_k);
      if (vt_fmt == "json")
        out << report::theorem_json(rep, *s).dump(2) << "\n";
      else
        report::theorem_text(out, rep, *s);
      return rep.hypotheses_met && rep.equality_holds && rep.corollary_holds ? 0 : 1;
    });
  }

  if (vb->parsed()) {
    auto s = parse_input(vb_seq);
    if (!s) return 2;
    return cli_detail::compute(err, [&] {
      auto rep = normalizer::check_multiplicity_bound(*s, vb_k);
      if (vb_fmt == "json")
        out << report::bound_json(rep, *s).dump(2) << "\n";
      else
        report::bound_text(out, rep);
      return rep.holds ? 0 : 1;
    });
  }

  if (nm->parsed()) {
    auto s = parse_input(nm_seq);
    if (!s) return 2;
    return cli_detail::compute(err, [&] {
      auto res = normalizer::find_normalizer(*s);
      if (nm_fmt == "json")
        out << report::normalizer_json(res, *s).dump(2) << "\n";
      else
        report::normalizer_text(out, res, *s);
      return res.achieves_bound ? 0 : 1;
    });
  }

  if (dc->parsed()) {
    auto s = parse_input(dc_seq);
    if (!s) return 2;
    return cli_detail::compute(err, [&] {
      auto w = subsum::interval_decompose(*s, dc_t);
      if (dc_fmt == "json")
        out << report::witness_json(w, *s).dump(2) << "\n";
      else
        report::witness_text(out, w);
      return 0;
    });
  }

  if (sm->parsed()) {
    auto s = parse_input(sm_seq);
    if (!s) return 2;
    return cli_detail::compute(err, [&] {
      if (sm_fmt == "json")
        out << report::sums_json(*s).dump(2) << "\n";
      else
        report::sums_text(out, *s);
      return 0;
    });
  }

  if (cl->parsed()) {
    return cli_detail::compute(err, [&] {
      auto rep = dihedral::verify_classification(cl_n);
      if (cl_fmt == "json")
        out << report::classification_json(rep).dump(2) << "\n";
      else
        report::classification_text(out, rep);
      return rep.matches_family ? 0 : 1;
    });
  }

  if (dv->parsed()) {
    std::optional<davenport::GroupSpec> g;
    try {
      g = davenport::GroupSpec::from_name(dv_group);
    } catch (const parse_error& e) {
      err << "error: " << e.what() << "\n";
      return 2;
    } catch (const std::domain_error& e) {
      err << "error: " << e.what() << "\n";
      return 2;
    }
    int budget = g->abelian() ? 63 : 21;
    if (dv_max_len > budget) {
      err << "error: --max-len " << dv_max_len << " exceeds the search budget " << budget
          << " for " << g->name() << "\n";
      return 2;
    }
    int max_len = dv_max_len > 0 ? dv_max_len : std::min(g->order(), budget);
    return cli_detail::compute(err, [&] {
      auto res = davenport::davenport_search(*g, max_len, dv_jobs);
      if (dv_fmt == "json")
        out << report::davenport_json(*g, max_len, res).dump(2) << "\n";
      else
        report::davenport_text(out, *g, max_len, res);
      return res.bounded ? 0 : 1;
    });
  }

  if (sw->parsed()) {
    SweepReport r;
    try {
      r = run_sweep(sw_suite, sw_cfg);
    } catch (const std::domain_error& e) {
      err << "error: " << e.what() << "\n";
      return 2;
    }
    err << "elapsed: " << r.elapsed_ms << "ms\n";
    if (sw_fmt == "json")
      out << sweep_json(r, sw_cfg.timing).dump(2) << "\n";
    else
      sweep_text(out, r, sw_cfg.timing);
    return r.counterexamples.empty() ? 0 : 1;
  }

  return 2;
}

}  // namespace zsum::cli
