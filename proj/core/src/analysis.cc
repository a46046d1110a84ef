// Copyright 2026 The Liftlab Authors
//
// Licensed under the Apache License, Version 2.0.
// SPDX-License-Identifier: Apache-2.0

#include "liftlab/analysis.h"

#include <algorithm>
#include <functional>

namespace liftlab {

namespace {

void collect_free(const Expr& e, VarSet& out);

void collect_rhs(const Rhs& rhs, VarSet& out) {
  VarSet inner;
  collect_free(*rhs_body(rhs), inner);
  if (const auto* lam = std::get_if<Lambda>(&rhs)) {
    for (const Name& p : lam->params) inner.erase(p);
  }
  out.insert(inner.begin(), inner.end());
}

void collect_free(const Expr& e, VarSet& out) {
  if (const auto* a = e.as<Atom>()) {
    if (a->is_var()) out.insert(a->var());
    return;
  }
  if (const auto* app = e.as<App>()) {
    out.insert(app->head);
    for (const ExprPtr& arg : app->args) collect_free(*arg, out);
    return;
  }
  if (const auto* prim = e.as<PrimApp>()) {
    for (const ExprPtr& arg : prim->args) collect_free(*arg, out);
    return;
  }
  if (const auto* let = e.as<Let>()) {
    VarSet inner;
    for (const Binding& b : let->group.binds) collect_rhs(b.rhs, inner);
    collect_free(*let->body, inner);
    for (const Binding& b : let->group.binds) inner.erase(b.binder);
    out.insert(inner.begin(), inner.end());
    return;
  }
  const auto& cs = std::get<Case>(e.node);
  collect_free(*cs.scrutinee, out);
  for (const Alt& alt : cs.alts) collect_free(*alt.body, out);
  VarSet inner;
  collect_free(*cs.default_body, inner);
  inner.erase(cs.default_binder);
  out.insert(inner.begin(), inner.end());
}

}  // namespace

VarSet free_vars(const Expr& e) {
  VarSet out;
  collect_free(e, out);
  return out;
}

VarSet free_vars(const Rhs& rhs) {
  VarSet out;
  collect_rhs(rhs, out);
  return out;
}

VarSet top_level_names(const Program& p) {
  VarSet out;
  for (const TopBind& tb : p.top_binds) out.insert(tb.name);
  return out;
}

VarSet set_minus(const VarSet& vs, const VarSet& drop) {
  VarSet out;
  std::set_difference(vs.begin(), vs.end(), drop.begin(), drop.end(),
                      std::inserter(out, out.end()));
  return out;
}

VarSet set_union(const VarSet& a, const VarSet& b) {
  VarSet out = a;
  out.insert(b.begin(), b.end());
  return out;
}

VarSet set_intersection(const VarSet& a, const VarSet& b) {
  VarSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
  return out;
}

VarSet closure_vars(const Rhs& rhs, const BindGroup& group, const VarSet& top_level) {
  VarSet out = set_minus(free_vars(rhs), top_level);
  for (const Binding& b : group.binds) out.erase(b.binder);
  return out;
}

Cardinality cardinality(const Rhs& rhs) {
  if (const auto* lam = std::get_if<Lambda>(&rhs)) return lam->card;
  return Cardinality::thunk();
}

//===----------------------------------------------------------------------===//
// Occurrence facts
//===----------------------------------------------------------------------===//

namespace {

class OccurrenceScan {
 public:
  OccFacts run(const Program& p) {
    for (const TopBind& tb : p.top_binds) expr(*tb.body);
    expr(*p.main);
    return std::move(facts_);
  }

 private:
  void atom_arg(const Expr& e) {
    if (const auto* a = e.as<Atom>(); a && a->is_var()) {
      auto it = facts_.find(a->var());
      if (it != facts_.end()) {
        it->second.occurs_as_argument = true;
        it->second.all_occurrences_saturated_calls = false;
      }
      return;
    }
    expr(e);
  }

  void expr(const Expr& e) {
    if (const auto* a = e.as<Atom>()) {
      if (!a->is_var()) return;
      if (auto it = facts_.find(a->var()); it != facts_.end()) {
        it->second.occurs_unapplied = true;
        it->second.all_occurrences_saturated_calls = false;
      }
      return;
    }
    if (const auto* app = e.as<App>()) {
      if (auto it = facts_.find(app->head); it != facts_.end()) {
        if (app->args.size() < it->second.arity || !it->second.is_known_function) {
          it->second.all_occurrences_saturated_calls = false;
        }
      }
      for (const ExprPtr& arg : app->args) atom_arg(*arg);
      return;
    }
    if (const auto* prim = e.as<PrimApp>()) {
      for (const ExprPtr& arg : prim->args) atom_arg(*arg);
      return;
    }
    if (const auto* let = e.as<Let>()) {
      // Binders are registered before any RHS is scanned so recursive
      // occurrences are seen.
      for (const Binding& b : let->group.binds) {
        BinderFacts f;
        if (const auto* lam = std::get_if<Lambda>(&b.rhs)) {
          f.is_known_function = true;
          f.arity = lam->params.size();
        }
        facts_[b.binder] = f;
      }
      for (const Binding& b : let->group.binds) expr(*rhs_body(b.rhs));
      expr(*let->body);
      return;
    }
    const auto& cs = std::get<Case>(e.node);
    expr(*cs.scrutinee);
    for (const Alt& alt : cs.alts) expr(*alt.body);
    expr(*cs.default_body);
  }

  OccFacts facts_;
};

}  // namespace

OccFacts occurrence_facts(const Program& p) { return OccurrenceScan().run(p); }

//===----------------------------------------------------------------------===//
// Binding-group splitting
//===----------------------------------------------------------------------===//

namespace {

// Tarjan's algorithm over group members; components come out dependencies
// first.
std::vector<std::vector<std::size_t>> strongly_connected(
    const std::vector<std::vector<std::size_t>>& edges) {
  const std::size_t n = edges.size();
  std::vector<int> index(n, -1);
  std::vector<int> low(n, 0);
  std::vector<bool> on_stack(n);
  std::vector<std::size_t> stack;
  std::vector<std::vector<std::size_t>> out;
  int counter = 0;
  std::function<void(std::size_t)> visit = [&](std::size_t v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = true;
    for (std::size_t w : edges[v]) {
      if (index[w] < 0) {
        visit(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      std::vector<std::size_t> component;
      std::size_t w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        component.push_back(w);
      } while (w != v);
      std::sort(component.begin(), component.end());
      out.push_back(std::move(component));
    }
  };
  for (std::size_t v = 0; v < n; ++v) {
    if (index[v] < 0) visit(v);
  }
  return out;
}

Rhs split_rhs(const Rhs& rhs) {
  if (const auto* lam = std::get_if<Lambda>(&rhs)) {
    return Lambda{lam->card, lam->params, split_groups(lam->body)};
  }
  return Thunk{split_groups(std::get<Thunk>(rhs).body)};
}

std::vector<ExprPtr> split_all(const std::vector<ExprPtr>& xs) {
  std::vector<ExprPtr> out;
  for (const ExprPtr& x : xs) out.push_back(split_groups(x));
  return out;
}

}  // namespace

ExprPtr split_groups(const ExprPtr& e) {
  if (e->as<Atom>()) return e;
  if (const auto* app = e->as<App>()) return make_app(app->head, split_all(app->args));
  if (const auto* prim = e->as<PrimApp>()) {
    return std::make_shared<const Expr>(Expr{PrimApp{prim->op, split_all(prim->args)}});
  }
  if (const auto* let = e->as<Let>()) {
    const auto& binds = let->group.binds;
    std::map<Name, std::size_t> position;
    for (std::size_t i = 0; i < binds.size(); ++i) position[binds[i].binder] = i;
    std::vector<std::vector<std::size_t>> edges(binds.size());
    for (std::size_t i = 0; i < binds.size(); ++i) {
      for (const Name& v : free_vars(binds[i].rhs)) {
        if (auto it = position.find(v); it != position.end()) edges[i].push_back(it->second);
      }
    }
    auto components = strongly_connected(edges);
    ExprPtr out = split_groups(let->body);
    for (auto c = components.rbegin(); c != components.rend(); ++c) {
      BindGroup group;
      for (std::size_t i : *c) {
        group.binds.push_back(Binding{binds[i].binder, split_rhs(binds[i].rhs)});
      }
      group.recursive = c->size() > 1 || std::find(edges[c->front()].begin(),
                                                   edges[c->front()].end(),
                                                   c->front()) != edges[c->front()].end();
      out = make_let(std::move(group), std::move(out));
    }
    return out;
  }
  const auto& cs = std::get<Case>(e->node);
  std::vector<Alt> alts;
  for (const Alt& alt : cs.alts) alts.push_back(Alt{alt.pattern, split_groups(alt.body)});
  return make_case(split_groups(cs.scrutinee), std::move(alts), cs.default_binder,
                   split_groups(cs.default_body));
}

Program split_groups(const Program& p) {
  Program out;
  for (const TopBind& tb : p.top_binds) {
    out.top_binds.push_back(TopBind{tb.name, tb.params, split_groups(tb.body)});
  }
  out.main = split_groups(p.main);
  return out;
}

}  // namespace liftlab
