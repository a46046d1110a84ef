// Copyright 2026 The Liftlab Authors
//
// Licensed under the Apache License, Version 2.0.
// SPDX-License-Identifier: Apache-2.0

#include <map>
#include <set>

#include "liftlab/syntax.h"

namespace liftlab {

namespace {

class Freshener {
 public:
  Program run(const Program& p) {
    for (const TopBind& tb : p.top_binds) {
      if (!used_.insert(tb.name).second) {
        throw FreshenError("duplicate top-level name '" + tb.name + "'");
      }
      globals_.insert(tb.name);
    }
    Program out;
    for (const TopBind& tb : p.top_binds) {
      TopBind nb{tb.name, {}, nullptr};
      for (const Name& param : tb.params) nb.params.push_back(bind(param));
      nb.body = expr(*tb.body);
      for (const Name& param : tb.params) unbind(param);
      out.top_binds.push_back(std::move(nb));
    }
    out.main = expr(*p.main);
    return out;
  }

 private:
  Name bind(const Name& n) {
    Name fresh = fresh_name(n, used_);
    scope_[n].push_back(fresh);
    return fresh;
  }

  void unbind(const Name& n) {
    auto it = scope_.find(n);
    it->second.pop_back();
    if (it->second.empty()) scope_.erase(it);
  }

  Name resolve(const Name& n) const {
    auto it = scope_.find(n);
    if (it != scope_.end()) return it->second.back();
    if (globals_.count(n)) return n;
    throw FreshenError("unbound variable '" + n + "'");
  }

  std::vector<ExprPtr> exprs(const std::vector<ExprPtr>& xs) {
    std::vector<ExprPtr> out;
    out.reserve(xs.size());
    for (const ExprPtr& x : xs) out.push_back(expr(*x));
    return out;
  }

  ExprPtr expr(const Expr& e) {
    if (const auto* a = e.as<Atom>()) {
      if (!a->is_var()) return make_atom(*a);
      return make_var(resolve(a->var()));
    }
    if (const auto* app = e.as<App>()) return make_app(resolve(app->head), exprs(app->args));
    if (const auto* prim = e.as<PrimApp>()) {
      return std::make_shared<const Expr>(Expr{PrimApp{prim->op, exprs(prim->args)}});
    }
    if (const auto* let = e.as<Let>()) {
      BindGroup group{let->group.recursive, {}};
      for (const Binding& b : let->group.binds) group.binds.push_back(Binding{bind(b.binder), {}});
      for (std::size_t i = 0; i < let->group.binds.size(); ++i) {
        const Rhs& rhs = let->group.binds[i].rhs;
        if (const auto* lam = std::get_if<Lambda>(&rhs)) {
          Lambda nl{lam->card, {}, nullptr};
          for (const Name& param : lam->params) nl.params.push_back(bind(param));
          nl.body = expr(*lam->body);
          for (const Name& param : lam->params) unbind(param);
          group.binds[i].rhs = std::move(nl);
        } else {
          group.binds[i].rhs = Thunk{expr(*std::get<Thunk>(rhs).body)};
        }
      }
      ExprPtr body = expr(*let->body);
      for (const Binding& b : let->group.binds) unbind(b.binder);
      return make_let(std::move(group), std::move(body));
    }
    const auto& cs = std::get<Case>(e.node);
    ExprPtr scrutinee = expr(*cs.scrutinee);
    std::vector<Alt> alts;
    for (const Alt& alt : cs.alts) alts.push_back(Alt{alt.pattern, expr(*alt.body)});
    Name binder = bind(cs.default_binder);
    ExprPtr body = expr(*cs.default_body);
    unbind(cs.default_binder);
    return make_case(std::move(scrutinee), std::move(alts), std::move(binder), std::move(body));
  }

  std::set<Name> used_;
  std::set<Name> globals_;
  std::map<Name, std::vector<Name>> scope_;
};

}  // namespace

Program freshen(const Program& program) { return Freshener().run(program); }

}  // namespace liftlab
