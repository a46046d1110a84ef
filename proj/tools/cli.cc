// Copyright 2026 The Liftlab Authors
//
// Licensed under the Apache License, Version 2.0.
// SPDX-License-Identifier: Apache-2.0

#include "cli.h"

#include <CLI11.hpp>
#include <fstream>
#include <nlohmann/json.hpp>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>

#include "liftlab/analysis.h"
#include "liftlab/lifter.h"
#include "liftlab/machine.h"
#include "liftlab/skeleton.h"
#include "liftlab/syntax.h"

namespace liftlab::cli {

namespace {

using Json = nlohmann::ordered_json;

// Thrown for input problems that map to exit status 1.
struct InputFailure {
  std::string message;
};

struct Options {
  std::string input;
  LiftConfig lift;
  bool eval = false;
  std::uint64_t fuel = kDefaultFuel;
  std::string report = "text";
  std::size_t max_groups = 4;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputFailure{path + ": cannot open file"};
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

// parse, freshen, validate, split into strongly connected groups.
Program load(const std::string& path) {
  Program p;
  try {
    p = parse(read_file(path));
  } catch (const ParseError& e) {
    throw InputFailure{path + ":" + e.what()};
  }
  try {
    p = freshen(p);
  } catch (const FreshenError& e) {
    throw InputFailure{path + ": " + e.what()};
  }
  auto violations = validate(p);
  if (!violations.empty()) {
    std::string message;
    for (const Violation& v : violations) {
      if (!message.empty()) message += "\n";
      message += path + ": " + std::string(violation_kind_name(v.kind)) + " at " + v.path;
      if (!v.detail.empty()) message += ": " + v.detail;
    }
    throw InputFailure{message};
  }
  return split_groups(p);
}

Json growth_json(const Growth& g) {
  if (g.is_infinite()) return "inf";
  return g.words();
}

std::string braces(const VarSet& vs) {
  std::string out = "{";
  for (const Name& v : vs) out += (out.size() > 1 ? " " : "") + v;
  return out + "}";
}

std::string joined(const std::vector<Name>& names, const char* sep) {
  std::string out;
  for (const Name& n : names) out += (out.empty() ? "" : sep) + n;
  return out;
}

Json stats_json(const AllocStats& s) {
  Json per = Json::object();
  for (const auto& [name, b] : s.per_binder) {
    per[name] = Json{{"allocations", b.allocations},
                     {"entries", b.entries},
                     {"words", b.words},
                     {"min_entries_per_alloc", b.min_entries_per_alloc},
                     {"max_entries_per_alloc", b.max_entries_per_alloc}};
  }
  return Json{{"words", s.words}, {"closures", s.closures}, {"steps", s.steps}, {"per_binder", per}};
}

struct Evaluation {
  std::optional<EvalResult> result;
  std::string error;
};

Evaluation try_eval(const Program& p, std::uint64_t fuel) {
  Evaluation out;
  try {
    out.result = eval(p, fuel);
  } catch (const EvalError& e) {
    out.error = e.what();
  }
  return out;
}

struct RunReport {
  std::string input;
  Options options;
  std::vector<Decision> decisions;
  std::optional<Evaluation> before;
  std::optional<Evaluation> after;

  bool agreement() const {
    return before && after && before->result && after->result &&
           before->result->rendered == after->result->rendered;
  }
  std::optional<std::int64_t> delta() const {
    if (!before || !after || !before->result || !after->result) return std::nullopt;
    return static_cast<std::int64_t>(after->result->stats.words) -
           static_cast<std::int64_t>(before->result->stats.words);
  }
};

Json config_json(const Options& o) {
  return Json{{"max_arity_nonrec", o.lift.max_arity_nonrec},
              {"max_arity_rec", o.lift.max_arity_rec},
              {"closure_growth", o.lift.check_closure_growth},
              {"allow_unknown_calls", o.lift.allow_unknown_calls},
              {"allow_arg_occurrences", o.lift.allow_arg_occurrences},
              {"eval", o.eval},
              {"fuel", o.fuel}};
}

Json report_json(const RunReport& r) {
  Json decisions = Json::array();
  for (const Decision& d : r.decisions) {
    std::string_view criterion = reason_criterion(d.reason);
    decisions.push_back(Json{{"site", d.site},
                             {"binders", d.binders},
                             {"recursive", d.recursive},
                             {"lifted", d.lifted},
                             {"reason", reason_name(d.reason)},
                             {"criterion", criterion.empty() ? Json(nullptr) : Json(criterion)},
                             {"detail", d.detail},
                             {"required_set", d.required_set},
                             {"predicted_net_words", growth_json(d.predicted_net_words)}});
  }
  auto side = [](const std::optional<Evaluation>& e, bool stats) -> Json {
    if (!e || !e->result) return nullptr;
    return stats ? stats_json(e->result->stats) : Json(e->result->rendered);
  };
  auto error = [](const std::optional<Evaluation>& e) -> Json {
    if (!e || e->result) return nullptr;
    return e->error;
  };
  auto delta = r.delta();
  return Json{{"input", r.input},
              {"config", config_json(r.options)},
              {"decisions", decisions},
              {"alloc_before", side(r.before, true)},
              {"alloc_after", side(r.after, true)},
              {"delta_words", delta ? Json(*delta) : Json(nullptr)},
              {"value_before", side(r.before, false)},
              {"value_after", side(r.after, false)},
              {"error_before", error(r.before)},
              {"error_after", error(r.after)},
              {"agreement", r.agreement()}};
}

void report_text(const RunReport& r, std::ostream& out) {
  const LiftConfig& c = r.options.lift;
  out << "input: " << r.input << "\n";
  out << "config: max-arity-nonrec=" << c.max_arity_nonrec << " max-arity-rec=" << c.max_arity_rec
      << " closure-growth=" << (c.check_closure_growth ? "on" : "off")
      << " unknown-calls=" << (c.allow_unknown_calls ? "allowed" : "rejected")
      << " arg-occurrences=" << (c.allow_arg_occurrences ? "wrapped" : "rejected") << "\n";
  out << "decisions:\n";
  for (const Decision& d : r.decisions) {
    out << "  [" << d.site << "] " << joined(d.binders, " ") << (d.recursive ? " (rec)" : "")
        << ": ";
    if (d.lifted) {
      out << "lifted";
    } else {
      std::string_view criterion = reason_criterion(d.reason);
      out << "kept, " << reason_name(d.reason);
      if (!criterion.empty()) out << " (" << criterion << ")";
      if (!d.detail.empty()) out << " " << d.detail;
    }
    out << "; required " << braces(d.required_set) << "; predicted "
        << d.predicted_net_words.to_string() << " words\n";
  }
  if (!r.before) return;
  auto side = [&](const char* label, const Evaluation& e) {
    if (e.result) {
      const AllocStats& s = e.result->stats;
      out << label << ": " << e.result->rendered << ", " << s.words << " words in " << s.closures
          << " closures, " << s.steps << " steps\n";
    } else {
      out << label << ": error: " << e.error << "\n";
    }
  };
  side("before", *r.before);
  side("after", *r.after);
  if (auto delta = r.delta()) out << "delta: " << *delta << " words\n";
  out << "agreement: " << (r.agreement() ? "yes" : "no") << "\n";
}

int do_lift(const Options& o, std::ostream& out) {
  Program p = load(o.input);
  LiftResult lifted = lift_program(p, o.lift);
  RunReport r{o.input, o, lifted.decisions, std::nullopt, std::nullopt};
  if (o.eval) {
    r.before = try_eval(p, o.fuel);
    r.after = try_eval(lifted.program, o.fuel);
  }
  if (o.report == "json") {
    out << report_json(r).dump(2) << "\n";
  } else {
    report_text(r, out);
  }
  if (o.eval && (!r.before->result || !r.after->result)) return kExitFailure;
  return kExitOk;
}

int do_dump_lifted(const Options& o, std::ostream& out) {
  out << print(lift_program(load(o.input), o.lift).program);
  return kExitOk;
}

int do_dump_skeleton(const Options& o, std::ostream& out) {
  Program p = load(o.input);
  VarSet top = top_level_names(p);
  for (const TopBind& tb : p.top_binds) {
    out << tb.name << ": " << to_sexpr(*skeletonize(*tb.body, top)) << "\n";
  }
  out << "main: " << to_sexpr(*skeletonize(*p.main, top)) << "\n";
  return kExitOk;
}

int do_oracle(const Options& o, std::ostream& out) {
  Program p = load(o.input);
  OracleResult table;
  try {
    table = oracle_enumerate(p, o.fuel, o.max_groups);
  } catch (const SubsetTooLarge& e) {
    throw InputFailure{o.input + ": " + e.what()};
  } catch (const EvalError& e) {
    throw InputFailure{o.input + ": " + e.what()};
  }
  std::set<Name> chosen;
  for (const Decision& d : lift_program(p, o.lift).decisions) {
    if (d.lifted) chosen.insert(d.binders.front());
  }
  auto subset = [](const std::set<Name>& s) { return braces(VarSet(s.begin(), s.end())); };

  if (o.report == "json") {
    Json rows = Json::array();
    for (const OracleEntry& e : table.entries) {
      rows.push_back(Json{{"subset", e.subset}, {"words", e.words}, {"value", e.rendered}});
    }
    Json doc{{"input", o.input},
             {"sites", table.sites},
             {"subsets", rows},
             {"best", table.best().subset},
             {"chosen", chosen}};
    out << doc.dump(2) << "\n";
    return kExitOk;
  }
  out << "sites: " << subset(std::set<Name>(table.sites.begin(), table.sites.end())) << "\n";
  for (const OracleEntry& e : table.entries) {
    out << "  " << subset(e.subset) << " " << e.words << " words, value " << e.rendered
        << (e.subset == chosen ? "  <- chosen" : "") << "\n";
  }
  out << "best: " << subset(table.best().subset) << " " << table.best().words << " words\n";
  return kExitOk;
}

void add_lift_flags(CLI::App& cmd, Options& o) {
  cmd.add_option("--max-arity-nonrec", o.lift.max_arity_nonrec,
                 "Arity limit for lifted non-recursive functions")
      ->capture_default_str();
  cmd.add_option("--max-arity-rec", o.lift.max_arity_rec,
                 "Arity limit for lifted recursive functions")
      ->capture_default_str();
  cmd.add_flag_callback(
      "--no-closure-growth", [&o] { o.lift.check_closure_growth = false; },
      "Ignore closure growth when deciding");
  cmd.add_flag("--allow-unknown-calls", o.lift.allow_unknown_calls,
               "Lift even if that turns known calls into unknown ones");
  cmd.add_flag("--allow-arg-occurrences", o.lift.allow_arg_occurrences,
               "Lift binders used as values, wrapping each such use");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Selective lambda lifting for a small lazy functional language", "liftlab"};
  app.require_subcommand(1);

  auto* lift = app.add_subcommand("lift", "Lift a program and report each decision");
  lift->add_option("file", o.input, "Input .stg file")->required();
  add_lift_flags(*lift, o);
  lift->add_flag("--eval", o.eval, "Evaluate before and after lifting");
  lift->add_option("--fuel", o.fuel, "Step limit per evaluation")->capture_default_str();
  lift->add_option("--report", o.report, "Report format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();

  auto* dump_lifted = app.add_subcommand("dump-lifted", "Print the lifted program");
  dump_lifted->add_option("file", o.input, "Input .stg file")->required();
  add_lift_flags(*dump_lifted, o);

  auto* dump_skeleton =
      app.add_subcommand("dump-skeleton", "Print the skeleton of each top-level body");
  dump_skeleton->add_option("file", o.input, "Input .stg file")->required();

  auto* oracle = app.add_subcommand("oracle", "Measure every subset of liftable groups");
  oracle->add_option("file", o.input, "Input .stg file")->required();
  oracle->add_option("--max-groups", o.max_groups, "Refuse inputs with more liftable groups")
      ->capture_default_str();
  oracle->add_option("--fuel", o.fuel, "Step limit per evaluation")->capture_default_str();
  oracle->add_option("--report", o.report, "Report format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();

  std::vector<const char*> argv{"liftlab"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (lift->parsed()) return do_lift(o, out);
    if (dump_lifted->parsed()) return do_dump_lifted(o, out);
    if (dump_skeleton->parsed()) return do_dump_skeleton(o, out);
    return do_oracle(o, out);
  } catch (const InputFailure& f) {
    err << f.message << "\n";
    return kExitFailure;
  }
}

}  // namespace liftlab::cli
