// Copyright 2026 The mertens Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mertens/cli/cache.hpp"
#include "mertens/cli/documents.hpp"
#include "mertens/cli/table.hpp"
#include "mertens/curvezeta.hpp"
#include "mertens/families.hpp"
#include "mertens/nfmertens.hpp"
#include "mertens/quadfield.hpp"
#include "mertens/weilexplicit.hpp"

namespace mertens::cli {

enum ExitCode : int { exit_ok = 0, exit_validation = 1, exit_budget = 2 };

inline const std::vector<std::string> &commands() {
  static const std::vector<std::string> c{"nf-mertens",     "nf-family",    "curve-zeta", "explicit-formula",
                                          "bounds-audit",   "curve-family", "residue"};
  return c;
}

/// Everything a run needs, filled from argv.
struct RunConfig {
  std::string command;
  std::string out;       ///< CSV path; empty = stdout
  std::string json_out;  ///< JSON mirror path; "-" = stdout
  unsigned jobs = 1;
  std::string cache_dir; ///< empty = no cache (MERTENS_CACHE_DIR fills it when unset)

  // number fields
  std::vector<std::string> fields;
  std::vector<std::uint64_t> xs;
  std::uint64_t max_x = 1'000'000'000;
  std::int64_t max_abs_disc = 1'000'000;
  MertensConstants constants;
  std::optional<double> rho;
  std::string imaginary, real; ///< "a:b"

  // varieties
  std::string curve;  ///< curve or weil document
  std::string family; ///< family document
  std::size_t n_max = 12;
  std::optional<std::size_t> counts_m;
  std::vector<std::size_t> N;
  CountOptions count;
  std::optional<double> tolerance;
};

namespace detail {

inline std::pair<std::int64_t, std::int64_t> parse_range(const std::string &s, const char *flag) {
  const auto colon = s.find(':', 1);
  if (colon == std::string::npos)
    throw ValidationError(std::string(flag) + ": expected a:b, got '" + s + "'");
  try {
    std::size_t p1 = 0, p2 = 0;
    const auto a = std::stoll(s.substr(0, colon), &p1);
    const auto b = std::stoll(s.substr(colon + 1), &p2);
    if (p1 != colon || p2 != s.size() - colon - 1)
      throw std::invalid_argument(s);
    return {a, b};
  } catch (const std::exception &) {
    throw ValidationError(std::string(flag) + ": expected a:b, got '" + s + "'");
  }
}

inline std::string bool_cell(bool b) { return b ? "true" : "false"; }

inline double ld(long double v) { return static_cast<double>(v); }

struct Dataset {
  std::string name;
  std::optional<CurveData> curve;
  WeilData weil;
};

class Runner {
public:
  Runner(const RunConfig &cfg, std::ostream &out, std::ostream &err) : cfg_(cfg), out_(out), err_(err) {
    count_ = cfg.count;
    count_.jobs = cfg.jobs;
    if (!cfg.cache_dir.empty())
      cache_ = std::make_unique<CountCache>(cfg.cache_dir, &err);
  }

  int dispatch() {
    const auto &c = cfg_.command;
    if (c == "nf-mertens")
      nf_mertens();
    else if (c == "nf-family")
      nf_family();
    else if (c == "curve-zeta")
      curve_zeta();
    else if (c == "explicit-formula")
      explicit_formula();
    else if (c == "bounds-audit")
      bounds_audit();
    else if (c == "curve-family")
      curve_family();
    else if (c == "residue")
      residue();
    else
      throw ValidationError("unknown command '" + c + "'");
    return exit_ok;
  }

private:
  void emit(const Table &t) {
    if (cfg_.out.empty() || cfg_.out == "-") {
      write_csv(out_, t);
    } else {
      std::ofstream f(cfg_.out);
      if (!f)
        throw ValidationError("--out: cannot write " + cfg_.out);
      write_csv(f, t);
    }
    if (!cfg_.json_out.empty()) {
      nlohmann::ordered_json j;
      j["command"] = cfg_.command;
      j["columns"] = t.columns;
      j["rows"] = to_json(t);
      if (cfg_.json_out == "-") {
        out_ << j.dump(2) << '\n';
      } else {
        std::ofstream f(cfg_.json_out);
        if (!f)
          throw ValidationError("--json: cannot write " + cfg_.json_out);
        f << j.dump(2) << '\n';
      }
    }
  }

  void summary(const std::string &line) { err_ << cfg_.command << ": " << line << '\n'; }

  std::vector<QuadField> fields() const {
    if (cfg_.fields.empty())
      throw ValidationError("--field is required");
    std::vector<QuadField> out;
    for (const auto &t : cfg_.fields)
      out.push_back(QuadField::parse(t));
    return out;
  }

  std::vector<std::uint64_t> xs(std::vector<std::uint64_t> fallback) const {
    auto v = cfg_.xs.empty() ? std::move(fallback) : cfg_.xs;
    for (auto x : v) {
      if (x < 3)
        throw ValidationError("--x: need x >= 3");
      if (x > cfg_.max_x)
        throw BudgetError("--x " + std::to_string(x) + " exceeds the sieve limit --max-x " +
                          std::to_string(cfg_.max_x));
    }
    return v;
  }

  MertensOptions mertens_options() const { return {cfg_.constants, cfg_.rho}; }

  ResidueOptions residue_options() const { return {cfg_.max_abs_disc}; }

  Doc curve_doc() const {
    if (cfg_.curve.empty())
      throw ValidationError("--curve is required");
    return load_document(cfg_.curve);
  }

  Dataset dataset(const Doc &doc, std::size_t M) {
    Dataset d;
    if (is_weil_document(doc.value)) {
      d.weil = weil_from_json(doc.value, doc.source);
      d.name = d.weil.name;
      return d;
    }
    const auto c = curve_from_json(doc.value, doc.source);
    if (cache_)
      d.curve = curve_data(c, M, count_, [&](unsigned n) { return cache_->get(c, n, count_); });
    else
      d.curve = curve_data(c, M, count_);
    d.weil = weil_from_curve(*d.curve);
    d.name = c.name;
    return d;
  }

  void nf_mertens() {
    const auto fs = fields();
    const auto x = xs({1'000'000});
    Table t{{"field", "x", "sum_log", "sum_recip", "main_term", "error", "normalized_error", "C1", "C2", "C3"}, {}};
    for (const auto &k : fs) {
      if (!k.is_rational() && std::llabs(k.disc) > cfg_.max_abs_disc)
        throw BudgetError("field " + k.label() + " exceeds --max-abs-disc");
      const auto reps = mertens_sweep(k, x, mertens_options(), residue_kappa(k, residue_options()));
      double worst = 0;
      for (const auto &r : reps) {
        t.add({r.field, std::to_string(r.x), ld(r.sum_log), ld(r.sum_recip), ld(r.main_term), ld(r.error),
               r.normalized_error, bool_cell(r.conditions.C1), bool_cell(r.conditions.C2),
               r.conditions.C3 ? bool_cell(*r.conditions.C3) : std::string("na")});
        worst = std::max(worst, r.normalized_error);
      }
      summary("field " + k.label() + ": " + std::to_string(reps.size()) + " rows, max normalized error " +
              format_double(worst));
    }
    emit(t);
  }

  static Table family_table(const FamilyReport &rep) {
    const bool nf = rep.kind == "nf";
    Table t{nf ? std::vector<std::string>{"member", "g", "n", "x", "log_kappa_over_g", "truncated", "gap",
                                          "error_over_g", "ebs_shape", "normalized_gap", "running_max", "ibs_ok",
                                          "status"}
               : std::vector<std::string>{"member", "b_X", "N", "log_kappa_over_b", "truncated", "gap",
                                          "error_over_b", "ebs_shape", "normalized_gap", "running_max", "ibs_ok",
                                          "status"},
            {}};
    for (const auto &r : rep.rows) {
      std::vector<Cell> row{r.id, r.size};
      if (nf)
        row.push_back(std::to_string(r.degree));
      row.insert(row.end(), {std::to_string(r.truncation), r.log_kappa_over_size, r.truncated, r.gap,
                             r.error_over_size, r.ebs_shape, r.normalized_gap, r.running_max,
                             r.ok() ? bool_cell(r.ibs_ok) : std::string("na"), r.status});
      t.add(std::move(row));
    }
    return t;
  }

  void family_summary(const FamilyReport &rep) {
    std::size_t ok = 0, ibs = 0;
    for (const auto &r : rep.rows) {
      ok += r.ok();
      ibs += r.ok() && r.ibs_ok;
    }
    summary("family " + rep.name + ": " + std::to_string(rep.rows.size()) + " members, " + std::to_string(ok) +
            " computed, " + std::to_string(ibs) + " satisfy the basic inequality");
  }

  void nf_family() {
    NfFamilySpec spec;
    if (!cfg_.family.empty()) {
      const auto doc = load_document(cfg_.family);
      if (family_kind(doc) != "nf")
        throw ValidationError(doc.source + ": nf-family needs a family document of kind \"nf\"");
      spec = nf_family_from_json(doc).spec;
    } else if (!cfg_.imaginary.empty()) {
      const auto [a, b] = parse_range(cfg_.imaginary, "--imaginary");
      spec.discs = imaginary_quadratic_discriminants(a, b);
      spec.name = "imaginary[" + cfg_.imaginary + "]";
    } else if (!cfg_.real.empty()) {
      const auto [a, b] = parse_range(cfg_.real, "--real");
      spec.discs = real_quadratic_discriminants(a, b);
      spec.name = "real[" + cfg_.real + "]";
    } else if (!cfg_.fields.empty()) {
      for (const auto &f : fields())
        spec.discs.push_back(f.disc);
    } else {
      throw ValidationError("nf-family needs --family, --imaginary, --real or --field");
    }
    if (!cfg_.xs.empty())
      spec.x = cfg_.xs;
    for (std::size_t i = 0; i < spec.discs.size(); ++i)
      if (spec.x_at(i) > cfg_.max_x)
        throw BudgetError("member x = " + std::to_string(spec.x_at(i)) + " exceeds --max-x");
    spec.residue = residue_options();
    spec.jobs = cfg_.jobs;
    const auto rep = scan_nf_family(spec);
    family_summary(rep);
    emit(family_table(rep));
  }

  void curve_zeta() {
    const auto doc = curve_doc();
    if (is_weil_document(doc.value))
      throw ValidationError(doc.source + ": curve-zeta needs a curve model, not weil data");
    const auto d = dataset(doc, cfg_.counts_m.value_or(cfg_.n_max));
    const auto &cd = *d.curve;
    const auto phi = closed_points(d.weil);
    Table t{{"n", "N_n", "closed_points", "source", "weil_ok"}, {}};
    for (std::size_t n = 1; n <= d.weil.M(); ++n) {
      PointCounts one{ipow(d.weil.r, static_cast<unsigned>(n)).convert_to<std::uint64_t>(), {d.weil.N[n - 1]}};
      t.add({std::to_string(n), d.weil.N[n - 1].str(), phi[n - 1].str(),
             n <= cd.brute.size() ? std::string("count") : std::string("predicted"),
             bool_cell(within_weil_bound(one, cd.curve.genus))});
    }
    std::string coeffs;
    for (std::size_t i = 0; i < cd.P1.a.size(); ++i)
      coeffs += (i ? " " : "") + cd.P1.a[i].str();
    summary(d.name + ": genus " + std::to_string(cd.curve.genus) + ", P1 = [" + coeffs + "], kappa log r = " +
            format_double(ld(curve_residue(cd.P1) * std::log(static_cast<long double>(cd.curve.r())))) +
            (cache_ ? ", cache hits " + std::to_string(cache_->hits()) + " misses " + std::to_string(cache_->misses())
                    : std::string()));
    emit(t);
  }

  void explicit_formula() {
    const auto d = dataset(curve_doc(), cfg_.n_max);
    const auto splits = s_terms_sweep(d.weil, cfg_.n_max, closed_points(d.weil));
    Table t{{"N", "S0", "S1", "S2", "S3", "identity"}, {}};
    for (const auto &s : splits)
      t.add({std::to_string(s.N), ld(to_long_double(s.S0)), ld(to_long_double(s.S1)), ld(to_long_double(s.S2)),
             ld(to_long_double(s.S3)), s.identity_holds ? std::string("exact") : std::string("mismatch")});
    summary(d.name + ": S0 = S1 + S2 + S3 exactly for N = 1.." + std::to_string(splits.size()));
    emit(t);
  }

  void bounds_audit() {
    if (!cfg_.curve.empty())
      bounds_audit_variety();
    else
      bounds_audit_field();
  }

  void bounds_audit_variety() {
    const auto d = dataset(curve_doc(), std::max<std::size_t>(cfg_.n_max, cfg_.counts_m.value_or(64)));
    const auto phi = closed_points(d.weil);
    const auto splits = s_terms_sweep(d.weil, cfg_.n_max, phi);
    Table t{{"subject", "N", "check", "value", "lower", "upper", "holds"}, {}};
    std::size_t failed = 0;
    auto row = [&](const char *name, const LemmaCheck &c, bool informational) {
      t.add({d.name, std::to_string(c.N), std::string(name), ld(c.value), ld(c.lower), ld(c.upper),
             informational ? std::string(c.holds ? "true" : "anomaly") : bool_cell(c.holds)});
      failed += !c.holds && !informational;
    };
    for (const auto &s : splits) {
      row("S0", lemma_s0_bound(d.weil, s.N, phi, s), false);
      row("S1", lemma_s1_bound(s.N), s.N == 1);
      row("S2", lemma_s2_bound(d.weil, s.N), false);
      row("S3", lemma_s3_bound(d.weil, s.N, s).lemma, false);
    }
    summary(d.name + ": " + std::to_string(t.rows.size()) + " checks, " + std::to_string(failed) + " failed");
    emit(t);
  }

  void bounds_audit_field() {
    const auto fs = fields();
    const auto x = xs({1000, 10000, 100000, 1000000});
    Table t{{"subject", "x", "check", "value", "lower", "upper", "holds"}, {}};
    const std::string na = "na";
    const double nan = std::nan("");
    for (const auto &k : fs) {
      const std::uint64_t top = *std::max_element(x.begin(), x.end());
      const auto table = place_table(k, top);
      for (auto xi : x) {
        const auto pa = pi_audit(table, xi);
        t.add({k.label(), std::to_string(xi), std::string("pi_minus_li"), pa.delta, nan, pa.grh_bound_shape, na});
        const auto c2 = lemma_c2_check(k.degree, cfg_.constants.c2, static_cast<double>(xi));
        t.add({k.label(), std::to_string(xi), std::string("lemma_C2"), c2.lhs, nan, c2.rhs, bool_cell(c2.holds)});
        if (!k.is_rational()) {
          const auto cond = condition_gate({cfg_.constants.c2, cfg_.constants.c3, cfg_.constants.c5, k.degree, k.genus},
                                           static_cast<double>(xi));
          t.add({k.label(), std::to_string(xi), std::string("C1"), std::log(static_cast<double>(xi)),
                 cond.C1_threshold, nan, bool_cell(cond.C1)});
          t.add({k.label(), std::to_string(xi), std::string("C2"), std::log(static_cast<double>(xi)),
                 cond.C2_threshold, nan, bool_cell(cond.C2)});
          if (cond.C3)
            t.add({k.label(), std::to_string(xi), std::string("C3"), std::log(static_cast<double>(xi)),
                   *cond.C3_threshold, nan, bool_cell(*cond.C3)});
        }
      }
      summary("field " + k.label() + ": audited " + std::to_string(x.size()) + " truncations");
    }
    emit(t);
  }

  void curve_family() {
    if (cfg_.family.empty())
      throw ValidationError("--family is required");
    const auto doc = load_document(cfg_.family);
    if (family_kind(doc) != "curve")
      throw ValidationError(doc.source + ": curve-family needs a family document of kind \"curve\"");
    const auto fam = curve_family_from_json(doc);
    CurveFamilySpec spec;
    spec.name = fam.name;
    spec.N = cfg_.N.empty() ? fam.N : cfg_.N;
    spec.jobs = cfg_.jobs;
    const std::size_t M = cfg_.counts_m.value_or(fam.M);
    for (const auto &m : fam.members)
      spec.members.push_back(dataset(m, M).weil);
    const auto rep = scan_curve_family(spec);
    family_summary(rep);
    emit(family_table(rep));
  }

  void residue() {
    if (!cfg_.curve.empty())
      residue_variety();
    else
      residue_field();
  }

  void residue_variety() {
    const auto d = dataset(curve_doc(), cfg_.counts_m.value_or(cfg_.n_max));
    CountResidueOptions opt;
    if (cfg_.tolerance)
      opt.tolerance = *cfg_.tolerance;
    const auto res = residue_from_counts(d.weil, opt);
    const double reference =
        d.curve ? ld(curve_residue(d.curve->P1) * std::log(static_cast<long double>(d.weil.r))) : std::nan("");
    Table t{{"name", "M", "log_kappa_log_r", "kappa_log_r", "tail_bound", "completed", "completed_log_kappa_log_r",
             "completed_kappa_log_r", "completed_tail_bound", "zeta_kappa_log_r"},
            {}};
    t.add({d.name, std::to_string(d.weil.M()), ld(res.log_kappa_log_r), ld(res.kappa_log_r), ld(res.tail_bound),
           bool_cell(res.completed), res.completed ? ld(res.completed_log_kappa_log_r) : std::nan(""),
           res.completed ? ld(res.completed_kappa_log_r) : std::nan(""),
           res.completed ? ld(res.completed_tail_bound) : std::nan(""), reference});
    summary(d.name + ": kappa log r = " +
            format_double(ld(res.completed ? res.completed_kappa_log_r : res.kappa_log_r)) + " from " +
            std::to_string(d.weil.M()) + " counts");
    emit(t);
  }

  void residue_field() {
    const auto fs = fields();
    Table t{{"field", "kappa", "log_kappa", "class_number", "regulator", "class_formula_kappa"}, {}};
    for (const auto &k : fs) {
      if (k.is_rational()) {
        t.add({k.label(), 1.0, 0.0, std::string("1"), 1.0, 1.0});
        summary("field Q: kappa = 1");
        continue;
      }
      const double kappa = residue_kappa(k, residue_options());
      if (k.disc < 0) {
        const auto chk = class_number_formula_check(k, class_number_imag(k.disc), residue_options());
        t.add({k.label(), kappa, std::log(kappa), std::to_string(chk.class_number), chk.regulator,
               chk.kappa_class_formula});
      } else {
        const auto chk = class_number_formula_check(k, std::nullopt, residue_options());
        t.add({k.label(), kappa, std::log(kappa), std::to_string(chk.class_number), chk.regulator,
               chk.kappa_class_formula});
      }
      summary("field " + k.label() + ": kappa = " + format_double(kappa));
    }
    emit(t);
  }

  const RunConfig &cfg_;
  std::ostream &out_;
  std::ostream &err_;
  CountOptions count_;
  std::unique_ptr<CountCache> cache_;
};

} // namespace detail

/// Parses args (without the program name) into cfg.  Returns an exit code
/// when the run should stop here (help, usage errors).
inline std::optional<int> parse_args(const std::vector<std::string> &args, RunConfig &cfg, std::ostream &out,
                                     std::ostream &err) {
  CLI::App app{"Mertens-type sums, explicit formulae and Brauer-Siegel scans for quadratic fields and curves "
               "over finite fields.",
               "mertens_cli"};
  app.require_subcommand(1, 1);
  app.fallthrough();

  app.add_option("--out", cfg.out, "CSV report path (default: stdout)");
  app.add_option("--json", cfg.json_out, "Also write the report as JSON to this path ('-' for stdout)");
  app.add_option("--jobs", cfg.jobs, "Worker threads (0 = all cores)")->capture_default_str();
  app.add_option("--cache-dir", cfg.cache_dir, "Point-count cache directory (env MERTENS_CACHE_DIR)");

  app.add_option("--field", cfg.fields, "Field: Q or a fundamental discriminant (repeatable)");
  app.add_option("--x", cfg.xs, "Truncation point(s) x")->check(CLI::PositiveNumber);
  app.add_option("--max-x", cfg.max_x, "Sieve limit: largest admissible x")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--max-abs-disc", cfg.max_abs_disc, "Largest |D| for residue evaluation")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  auto constant = [&](const char *flag, double &v, const char *what) {
    app.add_option(flag, v, what)->check(CLI::PositiveNumber)->capture_default_str();
  };
  constant("--c", cfg.constants.c, "Constant c in the GRH error bound");
  constant("--c1", cfg.constants.c1, "Constant c1 (prime-counting error)");
  constant("--c2", cfg.constants.c2, "Constant c2 in condition (C2)");
  constant("--c3", cfg.constants.c3, "Constant c3 in condition (C3)");
  constant("--c4", cfg.constants.c4, "Constant c4 (exceptional-zero branch)");
  constant("--c5", cfg.constants.c5, "Constant c5 in condition (C1)");
  app.add_option("--rho", cfg.rho, "Exceptional zero rho in [0, 1) for the non-GRH branch")
      ->check(CLI::Range(0.0, 1.0));
  app.add_option("--imaginary", cfg.imaginary, "Imaginary quadratic family a:b (a <= b < 0)");
  app.add_option("--real", cfg.real, "Real quadratic family a:b");

  app.add_option("--curve", cfg.curve, "Curve or weil-data JSON document");
  app.add_option("--family", cfg.family, "Family JSON document");
  app.add_option("--n-max", cfg.n_max, "Largest N reported")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--m", cfg.counts_m, "Number of counts N_1..N_M to derive")->check(CLI::PositiveNumber);
  app.add_option("--N", cfg.N, "Curve-family truncation(s) N(i)")->check(CLI::PositiveNumber);
  app.add_option("--plane-budget", cfg.count.plane_budget, "Largest r^n for plane-model counting")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--hyperelliptic-budget", cfg.count.hyperelliptic_budget,
                 "Largest r^n for hyperelliptic counting")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--max-brute-n", cfg.count.max_brute_n, "Largest n counted by enumeration")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--tolerance", cfg.tolerance, "Residue: fail when the tail bound exceeds this")
      ->check(CLI::PositiveNumber);

  app.add_subcommand("nf-mertens", "Mertens sums and error terms for quadratic fields (--field, --x)");
  app.add_subcommand("nf-family", "Brauer-Siegel scan of a quadratic family (--family | --imaginary | --real)");
  app.add_subcommand("curve-zeta", "Point counts, closed points and zeta numerator (--curve)");
  app.add_subcommand("explicit-formula", "Exact S0 = S1 + S2 + S3 split per N (--curve, --n-max)");
  app.add_subcommand("bounds-audit", "Lemma bounds for a variety (--curve) or field checks (--field)");
  app.add_subcommand("curve-family", "Brauer-Siegel scan of a family of varieties (--family)");
  app.add_subcommand("residue", "Residue kappa from counts (--curve) or for quadratic fields (--field)");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp &) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::CallForAllHelp &) {
    out << app.help("", CLI::AppFormatMode::All);
    return exit_ok;
  } catch (const CLI::ParseError &e) {
    const auto &c = commands();
    if (!args.empty() && args[0].rfind('-', 0) != 0 && std::find(c.begin(), c.end(), args[0]) == c.end())
      err << "error: unknown command '" << args[0] << "'\n\n" << app.help();
    else
      err << "error: " << e.what() << "\n\n" << app.help();
    return exit_validation;
  }
  for (const auto *sub : app.get_subcommands())
    cfg.command = sub->get_name();
  if (cfg.cache_dir.empty())
    if (const char *env = std::getenv("MERTENS_CACHE_DIR"))
      cfg.cache_dir = env;
  return std::nullopt;
}

/// Entry point: 0 on success, 1 on validation failure or bad usage, 2 on budget exhaustion.
inline int run(const std::vector<std::string> &args, std::ostream &out = std::cout, std::ostream &err = std::cerr) {
  RunConfig cfg;
  if (auto code = parse_args(args, cfg, out, err))
    return *code;
  try {
    detail::Runner runner(cfg, out, err);
    return runner.dispatch();
  } catch (const BudgetError &e) {
    err << "budget exhausted: " << e.what() << '\n';
    return exit_budget;
  } catch (const ValidationError &e) {
    err << "validation failed: " << e.what() << '\n';
    return exit_validation;
  } catch (const std::exception &e) {
    err << "error: " << e.what() << '\n';
    return exit_validation;
  }
}

} // namespace mertens::cli
