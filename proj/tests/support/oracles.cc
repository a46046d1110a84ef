// Copyright 2026 The Liftlab Authors
//
// Licensed under the Apache License, Version 2.0.
// SPDX-License-Identifier: Apache-2.0

#include "oracles.h"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "generator.h"

#ifndef LIFTLAB_TEST_DATA_DIR
#error "LIFTLAB_TEST_DATA_DIR must be defined"
#endif

namespace liftlab::testing {

namespace {

const Name kMarker = "\x01marker";

void mentioned(const Expr& e, VarSet& out) {
  if (const auto* a = e.as<Atom>()) {
    if (a->is_var()) out.insert(a->var());
  } else if (const auto* app = e.as<App>()) {
    out.insert(app->head);
    for (const ExprPtr& x : app->args) mentioned(*x, out);
  } else if (const auto* prim = e.as<PrimApp>()) {
    for (const ExprPtr& x : prim->args) mentioned(*x, out);
  } else if (const auto* let = e.as<Let>()) {
    for (const Binding& b : let->group.binds) mentioned(*rhs_body(b.rhs), out);
    mentioned(*let->body, out);
  } else {
    const auto& cs = std::get<Case>(e.node);
    mentioned(*cs.scrutinee, out);
    for (const Alt& alt : cs.alts) mentioned(*alt.body, out);
    mentioned(*cs.default_body, out);
  }
}

ExprPtr substitute(const ExprPtr& e, const Name& v);

std::vector<ExprPtr> substitute_all(const std::vector<ExprPtr>& xs, const Name& v) {
  std::vector<ExprPtr> out;
  for (const ExprPtr& x : xs) out.push_back(substitute(x, v));
  return out;
}

Rhs substitute_rhs(const Rhs& rhs, const Name& v) {
  if (const auto* lam = std::get_if<Lambda>(&rhs)) {
    for (const Name& p : lam->params) {
      if (p == v) return rhs;
    }
    return Lambda{lam->card, lam->params, substitute(lam->body, v)};
  }
  return Thunk{substitute(std::get<Thunk>(rhs).body, v)};
}

// Replaces free occurrences of `v` with the marker.
ExprPtr substitute(const ExprPtr& e, const Name& v) {
  if (const auto* a = e->as<Atom>()) {
    return a->is_var() && a->var() == v ? make_var(kMarker) : e;
  }
  if (const auto* app = e->as<App>()) {
    return make_app(app->head == v ? kMarker : app->head, substitute_all(app->args, v));
  }
  if (const auto* prim = e->as<PrimApp>()) {
    return std::make_shared<const Expr>(Expr{PrimApp{prim->op, substitute_all(prim->args, v)}});
  }
  if (const auto* let = e->as<Let>()) {
    for (const Binding& b : let->group.binds) {
      if (b.binder == v) return e;
    }
    BindGroup group{let->group.recursive, {}};
    for (const Binding& b : let->group.binds) {
      group.binds.push_back(Binding{b.binder, substitute_rhs(b.rhs, v)});
    }
    return make_let(std::move(group), substitute(let->body, v));
  }
  const auto& cs = std::get<Case>(e->node);
  std::vector<Alt> alts;
  for (const Alt& alt : cs.alts) alts.push_back(Alt{alt.pattern, substitute(alt.body, v)});
  ExprPtr fallback = cs.default_binder == v ? cs.default_body : substitute(cs.default_body, v);
  return make_case(substitute(cs.scrutinee, v), std::move(alts), cs.default_binder, fallback);
}

bool mentions_marker(const Expr& e) {
  VarSet names;
  mentioned(e, names);
  return names.count(kMarker) != 0;
}

}  // namespace

VarSet naive_free_vars(const Expr& e) {
  VarSet candidates;
  mentioned(e, candidates);
  VarSet out;
  ExprPtr shared = std::make_shared<const Expr>(e);
  for (const Name& v : candidates) {
    if (mentions_marker(*substitute(shared, v))) out.insert(v);
  }
  return out;
}

VarSet naive_free_vars(const Rhs& rhs) {
  VarSet candidates;
  mentioned(*rhs_body(rhs), candidates);
  VarSet out;
  for (const Name& v : candidates) {
    if (mentions_marker(*rhs_body(substitute_rhs(rhs, v)))) out.insert(v);
  }
  return out;
}

//===----------------------------------------------------------------------===//
// Exact cardinalities
//===----------------------------------------------------------------------===//

namespace {

Bound bound_of(std::uint64_t entries) {
  if (entries == 0) return Bound::kZero;
  if (entries == 1) return Bound::kOne;
  return Bound::kMany;
}

ExprPtr annotate(const ExprPtr& e, const AllocStats& stats);

std::vector<ExprPtr> annotate_all(const std::vector<ExprPtr>& xs, const AllocStats& stats) {
  std::vector<ExprPtr> out;
  for (const ExprPtr& x : xs) out.push_back(annotate(x, stats));
  return out;
}

ExprPtr annotate(const ExprPtr& e, const AllocStats& stats) {
  if (e->as<Atom>()) return e;
  if (const auto* app = e->as<App>()) return make_app(app->head, annotate_all(app->args, stats));
  if (const auto* prim = e->as<PrimApp>()) {
    return std::make_shared<const Expr>(Expr{PrimApp{prim->op, annotate_all(prim->args, stats)}});
  }
  if (const auto* let = e->as<Let>()) {
    BindGroup group{let->group.recursive, {}};
    for (const Binding& b : let->group.binds) {
      if (const auto* lam = std::get_if<Lambda>(&b.rhs)) {
        Cardinality card = lam->card;
        auto it = stats.per_binder.find(b.binder);
        if (it != stats.per_binder.end() && it->second.allocations > 0) {
          card.lower = it->second.min_entries_per_alloc > 0 ? Bound::kOne : Bound::kZero;
          card.upper = bound_of(it->second.max_entries_per_alloc);
        }
        group.binds.push_back(Binding{b.binder, Lambda{card, lam->params, annotate(lam->body, stats)}});
      } else {
        group.binds.push_back(Binding{b.binder, Thunk{annotate(std::get<Thunk>(b.rhs).body, stats)}});
      }
    }
    return make_let(std::move(group), annotate(let->body, stats));
  }
  const auto& cs = std::get<Case>(e->node);
  std::vector<Alt> alts;
  for (const Alt& alt : cs.alts) alts.push_back(Alt{alt.pattern, annotate(alt.body, stats)});
  return make_case(annotate(cs.scrutinee, stats), std::move(alts), cs.default_binder,
                   annotate(cs.default_body, stats));
}

}  // namespace

Program with_exact_cardinalities(const Program& p, const AllocStats& stats) {
  Program out;
  for (const TopBind& tb : p.top_binds) {
    out.top_binds.push_back(TopBind{tb.name, tb.params, annotate(tb.body, stats)});
  }
  out.main = annotate(p.main, stats);
  return out;
}

//===----------------------------------------------------------------------===//
// Structural invariants
//===----------------------------------------------------------------------===//

namespace {

struct OccurrenceCheck {
  const std::map<Name, VarSet>& lifted;
  std::map<Name, Name> renaming;  // required variable -> parameter carrying it
  std::string where;
  std::vector<std::string>& out;

  Name expected(const Name& v) const {
    auto it = renaming.find(v);
    return it == renaming.end() ? v : it->second;
  }

  void expr(const Expr& e) {
    if (const auto* a = e.as<Atom>()) {
      if (a->is_var()) {
        auto it = lifted.find(a->var());
        if (it != lifted.end() && !it->second.empty()) {
          out.push_back(where + ": lifted binder " + a->var() + " occurs without its required set");
        }
      }
      return;
    }
    if (const auto* app = e.as<App>()) {
      if (auto it = lifted.find(app->head); it != lifted.end()) {
        const VarSet& rqs = it->second;
        if (app->args.size() < rqs.size()) {
          out.push_back(where + ": call to " + app->head + " has too few arguments");
        } else {
          std::size_t i = 0;
          for (const Name& v : rqs) {
            const auto* arg = app->args[i++]->as<Atom>();
            if (!arg || !arg->is_var() || arg->var() != expected(v)) {
              out.push_back(where + ": call to " + app->head + " does not pass " + expected(v) +
                            " at position " + std::to_string(i - 1));
            }
          }
        }
      }
      for (const ExprPtr& x : app->args) expr(*x);
      return;
    }
    if (const auto* prim = e.as<PrimApp>()) {
      for (const ExprPtr& x : prim->args) expr(*x);
      return;
    }
    if (const auto* let = e.as<Let>()) {
      for (const Binding& b : let->group.binds) expr(*rhs_body(b.rhs));
      expr(*let->body);
      return;
    }
    const auto& cs = std::get<Case>(e.node);
    expr(*cs.scrutinee);
    for (const Alt& alt : cs.alts) expr(*alt.body);
    expr(*cs.default_body);
  }
};

void let_binders(const Expr& e, VarSet& out) {
  if (const auto* app = e.as<App>()) {
    for (const ExprPtr& x : app->args) let_binders(*x, out);
  } else if (const auto* prim = e.as<PrimApp>()) {
    for (const ExprPtr& x : prim->args) let_binders(*x, out);
  } else if (const auto* let = e.as<Let>()) {
    for (const Binding& b : let->group.binds) {
      out.insert(b.binder);
      let_binders(*rhs_body(b.rhs), out);
    }
    let_binders(*let->body, out);
  } else if (const auto* cs = e.as<Case>()) {
    let_binders(*cs->scrutinee, out);
    for (const Alt& alt : cs->alts) let_binders(*alt.body, out);
    let_binders(*cs->default_body, out);
  }
}

}  // namespace

std::vector<std::string> structural_violations(const LiftResult& r) {
  std::vector<std::string> out;
  for (const Violation& v : validate(r.program)) {
    out.push_back("invalid output: " + std::string(violation_kind_name(v.kind)) + " at " + v.path +
                  (v.detail.empty() ? "" : ": " + v.detail));
  }

  std::map<Name, VarSet> lifted;
  VarSet kept;
  for (const Decision& d : r.decisions) {
    for (const Name& b : d.binders) {
      if (d.lifted) {
        lifted[b] = d.required_set;
      } else {
        kept.insert(b);
      }
    }
  }

  VarSet top = top_level_names(r.program);
  VarSet local;
  for (const TopBind& tb : r.program.top_binds) let_binders(*tb.body, local);
  let_binders(*r.program.main, local);
  for (const auto& [b, rqs] : lifted) {
    if (!top.count(b)) out.push_back("lifted binder " + b + " is not top-level");
    if (local.count(b)) out.push_back("lifted binder " + b + " is still let-bound");
  }
  for (const Name& b : kept) {
    if (top.count(b)) out.push_back("kept binder " + b + " became top-level");
    if (!local.count(b)) out.push_back("kept binder " + b + " is no longer let-bound");
  }

  for (const TopBind& tb : r.program.top_binds) {
    OccurrenceCheck check{lifted, {}, "top[" + tb.name + "]", out};
    if (auto it = lifted.find(tb.name); it != lifted.end()) {
      std::size_t i = 0;
      for (const Name& v : it->second) {
        if (i >= tb.params.size()) {
          out.push_back("top[" + tb.name + "]: missing required parameters");
          break;
        }
        check.renaming[v] = tb.params[i++];
      }
    }
    check.expr(*tb.body);
  }
  OccurrenceCheck check{lifted, {}, "main", out};
  check.expr(*r.program.main);
  return out;
}

//===----------------------------------------------------------------------===//
// Data files
//===----------------------------------------------------------------------===//

std::string read_data_file(const std::string& name) {
  std::string path = std::string(LIFTLAB_TEST_DATA_DIR) + "/" + name;
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

Program load_data_program(const std::string& name) { return prepare(parse(read_data_file(name))); }

}  // namespace liftlab::testing
