// Copyright 2026 The Liftlab Authors
//
// Licensed under the Apache License, Version 2.0.
// SPDX-License-Identifier: Apache-2.0

#include "liftlab/syntax.h"

namespace liftlab {

namespace {

std::string pad(int n) { return std::string(static_cast<std::size_t>(n), ' '); }

std::string print_atom(const Atom& a) {
  return a.is_var() ? a.var() : std::to_string(a.literal());
}

bool single_line(const Expr& e) {
  return e.as<Atom>() || e.as<App>() || e.as<PrimApp>();
}

// Arguments are atomic in valid programs; anything else is bracketed so the
// output still reads sensibly in diagnostics.
std::string print_arg(const Expr& e, int indent) {
  if (const auto* a = e.as<Atom>()) return print_atom(*a);
  return "(" + print(e, indent) + ")";
}

// Text that follows a `=`, `->` or `thunk`: same line if short, else a new
// indented block.
std::string block(const Expr& e, int indent) {
  if (single_line(e)) return " " + print(e, indent);
  return "\n" + pad(indent) + print(e, indent);
}

std::string print_binding(const Binding& b, int indent) {
  std::string out = b.binder + " = ";
  if (const auto* lam = std::get_if<Lambda>(&b.rhs)) {
    out += "\\";
    if (!(lam->card == Cardinality::multi_shot())) out += print_cardinality(lam->card) + " ";
    for (std::size_t i = 0; i < lam->params.size(); ++i) {
      if (i) out += " ";
      out += lam->params[i];
    }
    out += " ->" + block(*lam->body, indent + 4);
  } else {
    out += "thunk" + block(*std::get<Thunk>(b.rhs).body, indent + 4);
  }
  return out;
}

}  // namespace

std::string print_cardinality(const Cardinality& card) {
  auto bound = [](Bound b) {
    switch (b) {
      case Bound::kZero: return "0";
      case Bound::kOne: return "1";
      case Bound::kMany: return "*";
    }
    return "?";
  };
  return std::string("{") + bound(card.lower) + "," + bound(card.upper) + "}";
}

std::string print(const Expr& e, int indent) {
  if (const auto* a = e.as<Atom>()) return print_atom(*a);
  if (const auto* app = e.as<App>()) {
    std::string out = app->head;
    for (const ExprPtr& arg : app->args) out += " " + print_arg(*arg, indent);
    return out;
  }
  if (const auto* prim = e.as<PrimApp>()) {
    std::string out(prim_op_name(prim->op));
    for (const ExprPtr& arg : prim->args) out += " " + print_arg(*arg, indent);
    return out;
  }
  if (const auto* let = e.as<Let>()) {
    std::string out;
    for (std::size_t i = 0; i < let->group.binds.size(); ++i) {
      if (i) out += "\n" + pad(indent);
      out += (i ? "and " : "let ") + print_binding(let->group.binds[i], indent);
    }
    return out + "\n" + pad(indent) + "in " + print(*let->body, indent);
  }
  const auto& cs = std::get<Case>(e.node);
  std::string out = "case " + print(*cs.scrutinee, indent + 2) + " of {";
  for (const Alt& alt : cs.alts) {
    out += "\n" + pad(indent + 2) + std::to_string(alt.pattern) + " ->" +
           block(*alt.body, indent + 4) + ";";
  }
  out += "\n" + pad(indent + 2) + "default " + cs.default_binder + " ->" +
         block(*cs.default_body, indent + 4);
  return out + "\n" + pad(indent) + "}";
}

std::string print(const Program& program) {
  std::string out;
  for (const TopBind& tb : program.top_binds) {
    out += tb.name;
    for (const Name& p : tb.params) out += " " + p;
    out += " =" + block(*tb.body, 2) + ";\n\n";
  }
  return out + "main =" + block(*program.main, 2) + "\n";
}

}  // namespace liftlab
