// Copyright 2026 The Liftlab Authors
//
// Licensed under the Apache License, Version 2.0.
// SPDX-License-Identifier: Apache-2.0

// The intermediate language: an untyped, STG-like calculus in A-normal form.
//
// Every lambda is the right-hand side of a let binding, applications take
// atomic arguments, and heap allocation happens only at let bindings. The
// calculus carries integer literals, two-argument primitive operations,
// integer case with a mandatory default alternative, and updatable thunks.
//
// Trees are immutable once built and shared through `ExprPtr`.

#ifndef LIFTLAB_SYNTAX_H_
#define LIFTLAB_SYNTAX_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace liftlab {

using Name = std::string;

/// Entry-count bound used by cardinality annotations.
enum class Bound : std::uint8_t { kZero, kOne, kMany };

/// Lower and upper bounds on how often a RHS body is entered per
/// allocation of its closure. The lower bound is either zero or one.
struct Cardinality {
  Bound lower = Bound::kZero;
  Bound upper = Bound::kMany;

  static constexpr Cardinality multi_shot() { return {Bound::kZero, Bound::kMany}; }
  static constexpr Cardinality thunk() { return {Bound::kZero, Bound::kOne}; }

  bool valid() const {
    return lower != Bound::kMany && static_cast<int>(lower) <= static_cast<int>(upper);
  }
  friend bool operator==(const Cardinality&, const Cardinality&) = default;
};

enum class PrimOp : std::uint8_t { kAdd, kSub, kMul, kRem, kLess };

std::string_view prim_op_name(PrimOp op);
std::optional<PrimOp> prim_op_from_name(std::string_view text);

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// A variable reference or an integer literal.
struct Atom {
  std::variant<Name, std::int64_t> value;

  bool is_var() const { return std::holds_alternative<Name>(value); }
  const Name& var() const { return std::get<Name>(value); }
  std::int64_t literal() const { return std::get<std::int64_t>(value); }
  friend bool operator==(const Atom&, const Atom&) = default;
};

/// `head a1 ... an`. Arguments are expressions so that ill-formed (non-ANF)
/// programs can be represented and rejected by `validate`.
struct App {
  Name head;
  std::vector<ExprPtr> args;
};

struct PrimApp {
  PrimOp op;
  std::vector<ExprPtr> args;
};

struct Lambda {
  Cardinality card;
  std::vector<Name> params;
  ExprPtr body;
};

/// Updatable nullary closure; memoised after its first entry.
struct Thunk {
  ExprPtr body;
};

using Rhs = std::variant<Lambda, Thunk>;

struct Binding {
  Name binder;
  Rhs rhs;
};

/// Bindings introduced by one `let`. Scoping is always recursive; the flag
/// records whether some member actually references a member.
struct BindGroup {
  bool recursive = false;
  std::vector<Binding> binds;
};

struct Let {
  BindGroup group;
  ExprPtr body;
};

struct Alt {
  std::int64_t pattern;
  ExprPtr body;
};

struct Case {
  ExprPtr scrutinee;
  std::vector<Alt> alts;
  Name default_binder;
  ExprPtr default_body;
};

struct Expr {
  std::variant<Atom, App, PrimApp, Let, Case> node;

  template <typename T>
  const T* as() const {
    return std::get_if<T>(&node);
  }
};

struct TopBind {
  Name name;
  std::vector<Name> params;
  ExprPtr body;
};

struct Program {
  std::vector<TopBind> top_binds;
  ExprPtr main;
};

// Construction helpers.
ExprPtr make_var(Name name);
ExprPtr make_lit(std::int64_t value);
ExprPtr make_atom(Atom atom);
ExprPtr make_app(Name head, std::vector<ExprPtr> args);
ExprPtr make_app(Name head, const std::vector<Atom>& args);
ExprPtr make_prim(PrimOp op, ExprPtr lhs, ExprPtr rhs);
ExprPtr make_let(BindGroup group, ExprPtr body);
ExprPtr make_case(ExprPtr scrutinee, std::vector<Alt> alts, Name default_binder,
                  ExprPtr default_body);

const ExprPtr& rhs_body(const Rhs& rhs);
bool is_lambda(const Rhs& rhs);

/// True if any member RHS mentions any member binder.
bool group_references_itself(const std::vector<Binding>& binds);

// Structural equality (deep, including cardinalities and group flags).
bool equal(const Expr& a, const Expr& b);
bool equal(const Rhs& a, const Rhs& b);
bool operator==(const Program& a, const Program& b);

//===----------------------------------------------------------------------===//
// Text format
//===----------------------------------------------------------------------===//

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int column, const std::string& message);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

/// Parses the textual `.stg` format. ANF is not checked here.
Program parse(std::string_view text);

std::string print(const Program& program);
std::string print(const Expr& expr, int indent = 0);
std::string print_cardinality(const Cardinality& card);

//===----------------------------------------------------------------------===//
// Well-formedness
//===----------------------------------------------------------------------===//

enum class ViolationKind : std::uint8_t {
  kNonUniqueName,
  kNonAtomicArg,
  kEmptyParams,
  kPrimArity,
  kUnboundVariable,
  kBadCardinality,
  kEmptyGroup,
};

std::string_view violation_kind_name(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::string path;
  std::string detail;
};

/// Checks ANF, global name uniqueness, lambda arity, primop saturation and
/// scoping. An empty result means the program is well formed.
std::vector<Violation> validate(const Program& program);

class FreshenError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Renames binders so every name in the program is globally unique. Names
/// keep their first occurrence; later clashes become `name_k` for the
/// smallest unused k. Throws FreshenError on unbound variables or clashing
/// top-level names.
Program freshen(const Program& program);

/// Returns `base` if unused, else the first unused `base_k` (k >= 1), and
/// marks the result as used.
template <typename Set>
Name fresh_name(const Name& base, Set& used) {
  if (used.insert(base).second) return base;
  for (int k = 1;; ++k) {
    Name candidate = base + "_" + std::to_string(k);
    if (used.insert(candidate).second) return candidate;
  }
}

}  // namespace liftlab

#endif  // LIFTLAB_SYNTAX_H_
