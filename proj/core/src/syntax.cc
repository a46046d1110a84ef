// Copyright 2026 The Liftlab Authors
//
// Licensed under the Apache License, Version 2.0.
// SPDX-License-Identifier: Apache-2.0

#include "liftlab/syntax.h"

#include <algorithm>
#include <set>

namespace liftlab {

std::string_view prim_op_name(PrimOp op) {
  switch (op) {
    case PrimOp::kAdd: return "+#";
    case PrimOp::kSub: return "-#";
    case PrimOp::kMul: return "*#";
    case PrimOp::kRem: return "%#";
    case PrimOp::kLess: return "<#";
  }
  return "?#";
}

std::optional<PrimOp> prim_op_from_name(std::string_view text) {
  for (PrimOp op : {PrimOp::kAdd, PrimOp::kSub, PrimOp::kMul, PrimOp::kRem, PrimOp::kLess}) {
    if (prim_op_name(op) == text) return op;
  }
  return std::nullopt;
}

ExprPtr make_atom(Atom atom) { return std::make_shared<const Expr>(Expr{std::move(atom)}); }
ExprPtr make_var(Name name) { return make_atom(Atom{std::move(name)}); }
ExprPtr make_lit(std::int64_t value) { return make_atom(Atom{value}); }

ExprPtr make_app(Name head, std::vector<ExprPtr> args) {
  return std::make_shared<const Expr>(Expr{App{std::move(head), std::move(args)}});
}

ExprPtr make_app(Name head, const std::vector<Atom>& args) {
  std::vector<ExprPtr> exprs;
  exprs.reserve(args.size());
  for (const Atom& a : args) exprs.push_back(make_atom(a));
  return make_app(std::move(head), std::move(exprs));
}

ExprPtr make_prim(PrimOp op, ExprPtr lhs, ExprPtr rhs) {
  return std::make_shared<const Expr>(Expr{PrimApp{op, {std::move(lhs), std::move(rhs)}}});
}

ExprPtr make_let(BindGroup group, ExprPtr body) {
  return std::make_shared<const Expr>(Expr{Let{std::move(group), std::move(body)}});
}

ExprPtr make_case(ExprPtr scrutinee, std::vector<Alt> alts, Name default_binder,
                  ExprPtr default_body) {
  return std::make_shared<const Expr>(Expr{Case{std::move(scrutinee), std::move(alts),
                                                std::move(default_binder),
                                                std::move(default_body)}});
}

const ExprPtr& rhs_body(const Rhs& rhs) {
  if (const auto* lam = std::get_if<Lambda>(&rhs)) return lam->body;
  return std::get<Thunk>(rhs).body;
}

bool is_lambda(const Rhs& rhs) { return std::holds_alternative<Lambda>(rhs); }

namespace {

// Scoped occurrence scan; `bound` holds names shadowed at this point.
bool mentions(const Expr& e, const std::set<Name>& targets, std::multiset<Name>& bound) {
  auto hit = [&](const Name& n) { return targets.count(n) && !bound.count(n); };
  struct Scope {
    std::multiset<Name>& bound;
    std::vector<std::multiset<Name>::iterator> added;
    void add(const Name& n) { added.push_back(bound.insert(n)); }
    ~Scope() {
      for (auto it : added) bound.erase(it);
    }
  };
  if (const auto* atom = e.as<Atom>()) return atom->is_var() && hit(atom->var());
  if (const auto* app = e.as<App>()) {
    if (hit(app->head)) return true;
    return std::any_of(app->args.begin(), app->args.end(),
                       [&](const ExprPtr& a) { return mentions(*a, targets, bound); });
  }
  if (const auto* prim = e.as<PrimApp>()) {
    return std::any_of(prim->args.begin(), prim->args.end(),
                       [&](const ExprPtr& a) { return mentions(*a, targets, bound); });
  }
  if (const auto* let = e.as<Let>()) {
    Scope scope{bound, {}};
    for (const Binding& b : let->group.binds) scope.add(b.binder);
    for (const Binding& b : let->group.binds) {
      Scope params{bound, {}};
      if (const auto* lam = std::get_if<Lambda>(&b.rhs)) {
        for (const Name& p : lam->params) params.add(p);
      }
      if (mentions(*rhs_body(b.rhs), targets, bound)) return true;
    }
    return mentions(*let->body, targets, bound);
  }
  const auto& cs = std::get<Case>(e.node);
  if (mentions(*cs.scrutinee, targets, bound)) return true;
  for (const Alt& alt : cs.alts) {
    if (mentions(*alt.body, targets, bound)) return true;
  }
  Scope scope{bound, {}};
  scope.add(cs.default_binder);
  return mentions(*cs.default_body, targets, bound);
}

bool equal_args(const std::vector<ExprPtr>& a, const std::vector<ExprPtr>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!equal(*a[i], *b[i])) return false;
  }
  return true;
}

}  // namespace

bool group_references_itself(const std::vector<Binding>& binds) {
  std::set<Name> targets;
  for (const Binding& b : binds) targets.insert(b.binder);
  for (const Binding& b : binds) {
    std::multiset<Name> bound;
    if (const auto* lam = std::get_if<Lambda>(&b.rhs)) {
      bound.insert(lam->params.begin(), lam->params.end());
    }
    if (mentions(*rhs_body(b.rhs), targets, bound)) return true;
  }
  return false;
}

bool equal(const Rhs& a, const Rhs& b) {
  if (a.index() != b.index()) return false;
  if (const auto* la = std::get_if<Lambda>(&a)) {
    const auto& lb = std::get<Lambda>(b);
    return la->card == lb.card && la->params == lb.params && equal(*la->body, *lb.body);
  }
  return equal(*std::get<Thunk>(a).body, *std::get<Thunk>(b).body);
}

bool equal(const Expr& a, const Expr& b) {
  if (a.node.index() != b.node.index()) return false;
  if (const auto* x = a.as<Atom>()) return *x == *b.as<Atom>();
  if (const auto* x = a.as<App>()) {
    const auto* y = b.as<App>();
    return x->head == y->head && equal_args(x->args, y->args);
  }
  if (const auto* x = a.as<PrimApp>()) {
    const auto* y = b.as<PrimApp>();
    return x->op == y->op && equal_args(x->args, y->args);
  }
  if (const auto* x = a.as<Let>()) {
    const auto* y = b.as<Let>();
    if (x->group.recursive != y->group.recursive) return false;
    if (x->group.binds.size() != y->group.binds.size()) return false;
    for (std::size_t i = 0; i < x->group.binds.size(); ++i) {
      const Binding& bx = x->group.binds[i];
      const Binding& by = y->group.binds[i];
      if (bx.binder != by.binder || !equal(bx.rhs, by.rhs)) return false;
    }
    return equal(*x->body, *y->body);
  }
  const auto& x = std::get<Case>(a.node);
  const auto& y = std::get<Case>(b.node);
  if (!equal(*x.scrutinee, *y.scrutinee) || x.alts.size() != y.alts.size()) return false;
  for (std::size_t i = 0; i < x.alts.size(); ++i) {
    if (x.alts[i].pattern != y.alts[i].pattern || !equal(*x.alts[i].body, *y.alts[i].body)) {
      return false;
    }
  }
  return x.default_binder == y.default_binder && equal(*x.default_body, *y.default_body);
}

bool operator==(const Program& a, const Program& b) {
  if (a.top_binds.size() != b.top_binds.size()) return false;
  for (std::size_t i = 0; i < a.top_binds.size(); ++i) {
    const TopBind& x = a.top_binds[i];
    const TopBind& y = b.top_binds[i];
    if (x.name != y.name || x.params != y.params || !equal(*x.body, *y.body)) return false;
  }
  return equal(*a.main, *b.main);
}

}  // namespace liftlab
