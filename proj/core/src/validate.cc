// Copyright 2026 The Liftlab Authors
//
// Licensed under the Apache License, Version 2.0.
// SPDX-License-Identifier: Apache-2.0

#include <map>
#include <set>

#include "liftlab/syntax.h"

namespace liftlab {

std::string_view violation_kind_name(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::kNonUniqueName: return "NonUniqueName";
    case ViolationKind::kNonAtomicArg: return "NonAtomicArg";
    case ViolationKind::kEmptyParams: return "EmptyParams";
    case ViolationKind::kPrimArity: return "PrimArity";
    case ViolationKind::kUnboundVariable: return "UnboundVariable";
    case ViolationKind::kBadCardinality: return "BadCardinality";
    case ViolationKind::kEmptyGroup: return "EmptyGroup";
  }
  return "Unknown";
}

namespace {

class Validator {
 public:
  std::vector<Violation> run(const Program& p) {
    for (const TopBind& tb : p.top_binds) {
      declare(tb.name, "top[" + tb.name + "]");
      globals_.insert(tb.name);
    }
    for (const TopBind& tb : p.top_binds) {
      std::string path = "top[" + tb.name + "]";
      std::multiset<Name> scope;
      for (const Name& param : tb.params) {
        declare(param, path + ".param");
        scope.insert(param);
      }
      expr(*tb.body, path + ".body", scope);
    }
    std::multiset<Name> scope;
    expr(*p.main, "main", scope);
    return std::move(out_);
  }

 private:
  void report(ViolationKind kind, const std::string& path, std::string detail) {
    out_.push_back(Violation{kind, path, std::move(detail)});
  }

  void declare(const Name& n, const std::string& path) {
    if (!declared_.insert(n).second) report(ViolationKind::kNonUniqueName, path, n);
  }

  void use(const Name& n, const std::string& path, const std::multiset<Name>& scope) {
    if (!scope.count(n) && !globals_.count(n)) report(ViolationKind::kUnboundVariable, path, n);
  }

  void args(const std::vector<ExprPtr>& xs, const std::string& path,
            std::multiset<Name>& scope) {
    for (std::size_t i = 0; i < xs.size(); ++i) {
      std::string sub = path + ".arg[" + std::to_string(i) + "]";
      if (!xs[i]->as<Atom>()) report(ViolationKind::kNonAtomicArg, sub, print(*xs[i]));
      expr(*xs[i], sub, scope);
    }
  }

  void expr(const Expr& e, const std::string& path, std::multiset<Name>& scope) {
    if (const auto* a = e.as<Atom>()) {
      if (a->is_var()) use(a->var(), path, scope);
      return;
    }
    if (const auto* app = e.as<App>()) {
      use(app->head, path, scope);
      args(app->args, path, scope);
      return;
    }
    if (const auto* prim = e.as<PrimApp>()) {
      if (prim->args.size() != 2) {
        report(ViolationKind::kPrimArity, path,
               std::string(prim_op_name(prim->op)) + " given " +
                   std::to_string(prim->args.size()) + " arguments");
      }
      args(prim->args, path, scope);
      return;
    }
    if (const auto* let = e.as<Let>()) {
      if (let->group.binds.empty()) report(ViolationKind::kEmptyGroup, path, "");
      std::vector<std::multiset<Name>::iterator> added;
      for (const Binding& b : let->group.binds) {
        declare(b.binder, path + ".let[" + b.binder + "]");
        added.push_back(scope.insert(b.binder));
      }
      for (const Binding& b : let->group.binds) {
        std::string sub = path + ".let[" + b.binder + "].rhs";
        std::vector<std::multiset<Name>::iterator> params;
        if (const auto* lam = std::get_if<Lambda>(&b.rhs)) {
          if (lam->params.empty()) report(ViolationKind::kEmptyParams, sub, b.binder);
          if (!lam->card.valid()) {
            report(ViolationKind::kBadCardinality, sub, print_cardinality(lam->card));
          }
          for (const Name& param : lam->params) {
            declare(param, sub + ".param");
            params.push_back(scope.insert(param));
          }
        }
        expr(*rhs_body(b.rhs), sub + ".body", scope);
        for (auto it : params) scope.erase(it);
      }
      expr(*let->body, path + ".in", scope);
      for (auto it : added) scope.erase(it);
      return;
    }
    const auto& cs = std::get<Case>(e.node);
    expr(*cs.scrutinee, path + ".scrutinee", scope);
    for (std::size_t i = 0; i < cs.alts.size(); ++i) {
      expr(*cs.alts[i].body, path + ".alt[" + std::to_string(i) + "]", scope);
    }
    declare(cs.default_binder, path + ".default");
    auto it = scope.insert(cs.default_binder);
    expr(*cs.default_body, path + ".default", scope);
    scope.erase(it);
  }

  std::set<Name> declared_;
  std::set<Name> globals_;
  std::vector<Violation> out_;
};

}  // namespace

std::vector<Violation> validate(const Program& program) { return Validator().run(program); }

}  // namespace liftlab
