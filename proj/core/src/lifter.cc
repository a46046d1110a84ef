// Copyright 2026 The Liftlab Authors
//
// Licensed under the Apache License, Version 2.0.
// SPDX-License-Identifier: Apache-2.0

#include "liftlab/lifter.h"

#include <algorithm>

namespace liftlab {

std::string_view reason_name(Reason r) {
  switch (r) {
    case Reason::kLifted: return "Lifted";
    case Reason::kArgOccurrence: return "ArgOccurrence";
    case Reason::kClosureGrowth: return "ClosureGrowth";
    case Reason::kCallingConvention: return "CallingConvention";
    case Reason::kKnownCalls: return "KnownCalls";
    case Reason::kUpdatable: return "Updatable";
    case Reason::kNotSelected: return "NotSelected";
  }
  return "Unknown";
}

std::string_view reason_criterion(Reason r) {
  switch (r) {
    case Reason::kArgOccurrence: return "C1";
    case Reason::kClosureGrowth: return "C2";
    case Reason::kCallingConvention: return "C3";
    case Reason::kKnownCalls: return "C4";
    case Reason::kUpdatable: return "C5";
    default: return "";
  }
}

VarSet expand(const Expander& a, const VarSet& vs) {
  VarSet out;
  for (const Name& v : vs) {
    auto it = a.required.find(v);
    if (it == a.required.end()) {
      out.insert(v);
    } else {
      out.insert(it->second.begin(), it->second.end());
    }
  }
  return out;
}

Expander add_required_sets(const BindGroup& group, const Expander& a) {
  VarSet required;
  for (const Binding& b : group.binds) {
    VarSet expanded = expand(a, free_vars(b.rhs));
    required.insert(expanded.begin(), expanded.end());
  }
  for (const Binding& b : group.binds) required.erase(b.binder);
  required = set_minus(required, a.top_level);
  Expander out = a;
  for (const Binding& b : group.binds) out.required[b.binder] = required;
  return out;
}

namespace {

bool has_thunk(const BindGroup& group) {
  return std::any_of(group.binds.begin(), group.binds.end(),
                     [](const Binding& b) { return !is_lambda(b.rhs); });
}

bool has_value_occurrence(const BindGroup& group, const OccFacts& facts) {
  return std::any_of(group.binds.begin(), group.binds.end(), [&](const Binding& b) {
    auto it = facts.find(b.binder);
    return it != facts.end() && (it->second.occurs_as_argument || it->second.occurs_unapplied);
  });
}

}  // namespace

Growth predicted_net_words(const BindGroup& group, const Expander& before,
                           const Expander& after, const Expr& body) {
  const VarSet& top = before.top_level;
  // The group's own closures vanish; only their bodies remain, run as often
  // as before.
  SkeletonPtr skel;
  for (const Binding& b : group.binds) {
    SkeletonPtr one = skeletonize_rhs(b.rhs, top);
    skel = skel ? Skeleton::seq(skel, one) : one;
  }
  skel = Skeleton::seq(skel, skeletonize(body, top));
  skel = map_captured(skel, [&](const VarSet& vs) { return expand(before, vs); });

  VarSet removed;
  for (const Binding& b : group.binds) removed.insert(b.binder);
  const VarSet& added = after.required.at(group.binds.front().binder);
  Growth growth = closure_growth(added, removed, *skel);

  std::int64_t saved = 0;
  for (const Binding& b : group.binds) {
    saved += 1 + static_cast<std::int64_t>(expand(before, closure_vars(b.rhs, group, top)).size());
  }
  return growth - saved;
}

Decision decide(const BindGroup& group, const Expander& before, const Expander& after,
                const Expr& body, const OccFacts& facts, const LiftConfig& cfg) {
  Decision d;
  for (const Binding& b : group.binds) d.binders.push_back(b.binder);
  d.recursive = group.recursive;
  d.required_set = after.required.at(group.binds.front().binder);
  d.predicted_net_words = predicted_net_words(group, before, after, body);

  auto reject = [&](Reason r, std::string detail = {}) {
    d.lifted = false;
    d.reason = r;
    d.detail = std::move(detail);
    return d;
  };

  if (has_thunk(group)) return reject(Reason::kUpdatable);
  if (!cfg.allow_arg_occurrences && has_value_occurrence(group, facts)) {
    return reject(Reason::kArgOccurrence);
  }
  if (!cfg.allow_unknown_calls) {
    for (const Name& v : d.required_set) {
      auto it = facts.find(v);
      if (it != facts.end() && it->second.is_known_function) return reject(Reason::kKnownCalls, v);
    }
  }
  std::size_t limit = group.recursive ? cfg.max_arity_rec : cfg.max_arity_nonrec;
  std::size_t arity = 0;
  for (const Binding& b : group.binds) {
    arity = std::max(arity, std::get<Lambda>(b.rhs).params.size() + d.required_set.size());
  }
  if (arity > limit) return reject(Reason::kCallingConvention, std::to_string(arity));
  if (cfg.check_closure_growth && d.predicted_net_words > Growth(0)) {
    return reject(Reason::kClosureGrowth, d.predicted_net_words.to_string());
  }
  d.lifted = true;
  d.reason = Reason::kLifted;
  return d;
}

//===----------------------------------------------------------------------===//
// The transformation
//===----------------------------------------------------------------------===//

namespace {

void collect_names(const Expr& e, VarSet& out) {
  if (const auto* a = e.as<Atom>()) {
    if (a->is_var()) out.insert(a->var());
  } else if (const auto* app = e.as<App>()) {
    out.insert(app->head);
    for (const ExprPtr& x : app->args) collect_names(*x, out);
  } else if (const auto* prim = e.as<PrimApp>()) {
    for (const ExprPtr& x : prim->args) collect_names(*x, out);
  } else if (const auto* let = e.as<Let>()) {
    for (const Binding& b : let->group.binds) {
      out.insert(b.binder);
      if (const auto* lam = std::get_if<Lambda>(&b.rhs)) {
        out.insert(lam->params.begin(), lam->params.end());
      }
      collect_names(*rhs_body(b.rhs), out);
    }
    collect_names(*let->body, out);
  } else {
    const auto& cs = std::get<Case>(e.node);
    collect_names(*cs.scrutinee, out);
    for (const Alt& alt : cs.alts) collect_names(*alt.body, out);
    out.insert(cs.default_binder);
    collect_names(*cs.default_body, out);
  }
}

// Renames variables throughout `e`. Names are globally unique, so every
// occurrence of a renamed variable is free.
ExprPtr rename(const ExprPtr& e, const std::map<Name, Name>& sub) {
  auto var = [&](const Name& n) {
    auto it = sub.find(n);
    return it == sub.end() ? n : it->second;
  };
  auto all = [&](const std::vector<ExprPtr>& xs) {
    std::vector<ExprPtr> out;
    for (const ExprPtr& x : xs) out.push_back(rename(x, sub));
    return out;
  };
  if (const auto* a = e->as<Atom>()) {
    if (!a->is_var() || !sub.count(a->var())) return e;
    return make_var(var(a->var()));
  }
  if (const auto* app = e->as<App>()) return make_app(var(app->head), all(app->args));
  if (const auto* prim = e->as<PrimApp>()) {
    return std::make_shared<const Expr>(Expr{PrimApp{prim->op, all(prim->args)}});
  }
  if (const auto* let = e->as<Let>()) {
    BindGroup group{let->group.recursive, {}};
    for (const Binding& b : let->group.binds) {
      if (const auto* lam = std::get_if<Lambda>(&b.rhs)) {
        group.binds.push_back({b.binder, Lambda{lam->card, lam->params, rename(lam->body, sub)}});
      } else {
        group.binds.push_back({b.binder, Thunk{rename(std::get<Thunk>(b.rhs).body, sub)}});
      }
    }
    return make_let(std::move(group), rename(let->body, sub));
  }
  const auto& cs = std::get<Case>(e->node);
  std::vector<Alt> alts;
  for (const Alt& alt : cs.alts) alts.push_back({alt.pattern, rename(alt.body, sub)});
  return make_case(rename(cs.scrutinee, sub), std::move(alts), cs.default_binder,
                   rename(cs.default_body, sub));
}

std::vector<ExprPtr> vars_of(const VarSet& vs) {
  std::vector<ExprPtr> out;
  for (const Name& v : vs) out.push_back(make_var(v));
  return out;
}

class Lifter {
 public:
  Lifter(const Program& p, const LiftConfig& cfg) : cfg_(cfg), facts_(occurrence_facts(p)) {
    for (const TopBind& tb : p.top_binds) {
      used_.insert(tb.name);
      used_.insert(tb.params.begin(), tb.params.end());
      collect_names(*tb.body, used_);
    }
    collect_names(*p.main, used_);
  }

  LiftResult run(const Program& p) {
    Expander a;
    a.top_level = top_level_names(p);
    LiftResult out;
    for (const TopBind& tb : p.top_binds) {
      out.program.top_binds.push_back(TopBind{tb.name, tb.params, lift(tb.body, a)});
    }
    out.program.main = lift(p.main, a);
    for (auto& tb : emitted_) out.program.top_binds.push_back(std::move(*tb));
    out.decisions = std::move(log_);
    return out;
  }

 private:
  // An occurrence of a lifted binder outside head position. With an empty
  // required set the top-level function itself is a valid atom; otherwise
  // the occurrence is wrapped in an eta-expanded closure.
  ExprPtr value_occurrence(const Name& v, const Expander& a,
                           std::vector<Binding>& wrappers) {
    const VarSet& rqs = a.required.at(v);
    if (rqs.empty()) return make_var(v);
    Name wrapper = fresh_name(v + "_w", used_);
    Lambda lam;
    std::vector<ExprPtr> call = vars_of(rqs);
    for (std::size_t i = 0; i < arity_.at(v); ++i) {
      Name param = fresh_name(v + "_a", used_);
      lam.params.push_back(param);
      call.push_back(make_var(param));
    }
    lam.body = make_app(v, std::move(call));
    wrappers.push_back(Binding{wrapper, std::move(lam)});
    return make_var(wrapper);
  }

  ExprPtr wrap(ExprPtr e, std::vector<Binding>& wrappers) {
    for (auto it = wrappers.rbegin(); it != wrappers.rend(); ++it) {
      e = make_let(BindGroup{false, {std::move(*it)}}, std::move(e));
    }
    return e;
  }

  std::vector<ExprPtr> lift_args(const std::vector<ExprPtr>& args, const Expander& a,
                                 std::vector<Binding>& wrappers) {
    std::vector<ExprPtr> out;
    for (const ExprPtr& arg : args) {
      const auto* atom = arg->as<Atom>();
      if (atom && atom->is_var() && a.contains(atom->var())) {
        out.push_back(value_occurrence(atom->var(), a, wrappers));
      } else {
        out.push_back(lift(arg, a));
      }
    }
    return out;
  }

  ExprPtr lift(const ExprPtr& e, const Expander& a) {
    if (const auto* atom = e->as<Atom>()) {
      if (!atom->is_var() || !a.contains(atom->var())) return e;
      std::vector<Binding> wrappers;
      ExprPtr v = value_occurrence(atom->var(), a, wrappers);
      return wrap(std::move(v), wrappers);
    }
    if (const auto* app = e->as<App>()) {
      std::vector<Binding> wrappers;
      std::vector<ExprPtr> args;
      if (auto it = a.required.find(app->head); it != a.required.end()) {
        args = vars_of(it->second);
      }
      for (ExprPtr& x : lift_args(app->args, a, wrappers)) args.push_back(std::move(x));
      return wrap(make_app(app->head, std::move(args)), wrappers);
    }
    if (const auto* prim = e->as<PrimApp>()) {
      std::vector<Binding> wrappers;
      auto args = lift_args(prim->args, a, wrappers);
      return wrap(std::make_shared<const Expr>(Expr{PrimApp{prim->op, std::move(args)}}),
                  wrappers);
    }
    if (const auto* let = e->as<Let>()) return lift_let(*let, a);
    const auto& cs = std::get<Case>(e->node);
    std::vector<Alt> alts;
    for (const Alt& alt : cs.alts) alts.push_back(Alt{alt.pattern, lift(alt.body, a)});
    return make_case(lift(cs.scrutinee, a), std::move(alts), cs.default_binder,
                     lift(cs.default_body, a));
  }

  bool sound_to_lift(const BindGroup& group) const {
    return !has_thunk(group) &&
           (cfg_.allow_arg_occurrences || !has_value_occurrence(group, facts_));
  }

  ExprPtr lift_let(const Let& let, const Expander& a) {
    const BindGroup& group = let.group;
    Expander extended = add_required_sets(group, a);
    Decision d = decide(group, a, extended, *let.body, facts_, cfg_);
    d.site = next_site_++;
    if (cfg_.forced) {
      bool chosen = cfg_.forced->count(group.binds.front().binder) && sound_to_lift(group);
      if (chosen) {
        d.lifted = true;
        d.reason = Reason::kLifted;
        d.detail.clear();
      } else if (d.lifted) {
        d.lifted = false;
        d.reason = Reason::kNotSelected;
      }
    }
    bool lifted = d.lifted;
    log_.push_back(std::move(d));

    if (!lifted) {
      BindGroup kept{group.recursive, {}};
      for (const Binding& b : group.binds) {
        if (const auto* lam = std::get_if<Lambda>(&b.rhs)) {
          kept.binds.push_back({b.binder, Lambda{lam->card, lam->params, lift(lam->body, a)}});
        } else {
          kept.binds.push_back({b.binder, Thunk{lift(std::get<Thunk>(b.rhs).body, a)}});
        }
      }
      return make_let(std::move(kept), lift(let.body, a));
    }

    for (const Binding& b : group.binds) arity_[b.binder] = std::get<Lambda>(b.rhs).params.size();
    // Reserve slots so lifted functions appear in decision order.
    std::vector<std::size_t> slots;
    for (std::size_t i = 0; i < group.binds.size(); ++i) {
      slots.push_back(emitted_.size());
      emitted_.emplace_back();
    }
    const VarSet& required = extended.required.at(group.binds.front().binder);
    for (std::size_t i = 0; i < group.binds.size(); ++i) {
      const Binding& b = group.binds[i];
      const auto& lam = std::get<Lambda>(b.rhs);
      ExprPtr body = lift(lam.body, extended);
      // Each lifted function gets private copies of the required variables
      // so binder names stay globally unique.
      std::map<Name, Name> sub;
      TopBind tb{b.binder, {}, nullptr};
      for (const Name& v : required) {
        Name param = fresh_name(v, used_);
        sub[v] = param;
        tb.params.push_back(param);
      }
      tb.params.insert(tb.params.end(), lam.params.begin(), lam.params.end());
      tb.body = rename(body, sub);
      emitted_[slots[i]] = std::make_unique<TopBind>(std::move(tb));
    }
    return lift(let.body, extended);
  }

  const LiftConfig& cfg_;
  OccFacts facts_;
  VarSet used_;
  std::map<Name, std::size_t> arity_;
  std::vector<std::unique_ptr<TopBind>> emitted_;
  std::vector<Decision> log_;
  std::size_t next_site_ = 0;
};

void collect_sites(const Expr& e, const OccFacts& facts, std::vector<Name>& out) {
  if (const auto* app = e.as<App>()) {
    for (const ExprPtr& x : app->args) collect_sites(*x, facts, out);
  } else if (const auto* prim = e.as<PrimApp>()) {
    for (const ExprPtr& x : prim->args) collect_sites(*x, facts, out);
  } else if (const auto* let = e.as<Let>()) {
    if (!has_thunk(let->group) && !has_value_occurrence(let->group, facts)) {
      out.push_back(let->group.binds.front().binder);
    }
    for (const Binding& b : let->group.binds) collect_sites(*rhs_body(b.rhs), facts, out);
    collect_sites(*let->body, facts, out);
  } else if (const auto* cs = e.as<Case>()) {
    collect_sites(*cs->scrutinee, facts, out);
    for (const Alt& alt : cs->alts) collect_sites(*alt.body, facts, out);
    collect_sites(*cs->default_body, facts, out);
  }
}

}  // namespace

LiftResult lift_program(const Program& p, const LiftConfig& cfg) {
  return Lifter(p, cfg).run(p);
}

std::vector<Name> liftable_sites(const Program& p) {
  OccFacts facts = occurrence_facts(p);
  std::vector<Name> out;
  for (const TopBind& tb : p.top_binds) collect_sites(*tb.body, facts, out);
  collect_sites(*p.main, facts, out);
  return out;
}

}  // namespace liftlab
