// Copyright 2026 The Liftlab Authors
//
// Licensed under the Apache License, Version 2.0.
// SPDX-License-Identifier: Apache-2.0

#include "liftlab/machine.h"

#include <algorithm>
#include <memory>
#include <set>
#include <unordered_map>
#include <variant>

#include "liftlab/analysis.h"
#include "liftlab/lifter.h"

namespace liftlab {

std::string_view eval_error_name(EvalErrorKind k) {
  switch (k) {
    case EvalErrorKind::kOutOfFuel: return "OutOfFuel";
    case EvalErrorKind::kUnboundVariable: return "UnboundVariable";
    case EvalErrorKind::kArityMismatch: return "ArityMismatch";
    case EvalErrorKind::kBlackholeLoop: return "BlackholeLoop";
    case EvalErrorKind::kDivideByZero: return "DivideByZero";
  }
  return "Unknown";
}

EvalError::EvalError(EvalErrorKind kind, const std::string& detail)
    : std::runtime_error(std::string(eval_error_name(kind)) + ": " + detail), kind_(kind) {}

namespace {

struct Value {
  bool is_int = true;
  std::int64_t n = 0;
  std::size_t ref = 0;

  static Value integer(std::int64_t v) { return {true, v, 0}; }
  static Value pointer(std::size_t r) { return {false, 0, r}; }
};

struct EnvNode;
using Env = std::shared_ptr<const EnvNode>;

struct EnvNode {
  const Name* name;
  Value value;
  Env next;
};

Env extend(Env env, const Name& name, Value v) {
  return std::make_shared<const EnvNode>(EnvNode{&name, v, std::move(env)});
}

enum class ThunkState : std::uint8_t { kPending, kBlackhole, kDone };

struct Object {
  bool is_thunk = false;
  const std::vector<Name>* params = nullptr;  // functions
  const Expr* body = nullptr;
  Env env;
  ThunkState state = ThunkState::kPending;
  Value done;
  const Name* binder = nullptr;  // let-allocated closures only
  std::uint64_t entries = 0;
};

struct UpdateK {
  std::size_t ref;
};
struct CaseK {
  const Case* cs;
  Env env;
};
struct ApplyK {
  std::vector<Value> args;
};
struct PrimK {
  PrimOp op;
  std::vector<Value> args;
  std::size_t next = 0;
};
using Frame = std::variant<UpdateK, CaseK, ApplyK, PrimK>;

std::int64_t wrap_add(std::int64_t a, std::int64_t b) {
  return static_cast<std::int64_t>(static_cast<std::uint64_t>(a) + static_cast<std::uint64_t>(b));
}
std::int64_t wrap_sub(std::int64_t a, std::int64_t b) {
  return static_cast<std::int64_t>(static_cast<std::uint64_t>(a) - static_cast<std::uint64_t>(b));
}
std::int64_t wrap_mul(std::int64_t a, std::int64_t b) {
  return static_cast<std::int64_t>(static_cast<std::uint64_t>(a) * static_cast<std::uint64_t>(b));
}

class Machine {
 public:
  Machine(const Program& p, std::uint64_t fuel) : fuel_(fuel), top_level_(top_level_names(p)) {
    for (const TopBind& tb : p.top_binds) {
      Object obj;
      obj.body = tb.body.get();
      if (tb.params.empty()) {
        obj.is_thunk = true;
      } else {
        obj.params = &tb.params;
      }
      globals_[tb.name] = Value::pointer(heap_.size());
      heap_.push_back(std::move(obj));
    }
  }

  EvalResult run(const Expr& main) {
    Value v = loop(main);
    EvalResult out;
    if (v.is_int) {
      out.integer = v.n;
      out.rendered = std::to_string(v.n);
    } else {
      out.rendered = "<function>";
    }
    std::set<Name> seen;
    for (const Object& obj : heap_) {
      if (!obj.binder) continue;
      BinderStats& s = stats_.per_binder[*obj.binder];
      if (seen.insert(*obj.binder).second) {
        s.min_entries_per_alloc = s.max_entries_per_alloc = obj.entries;
      } else {
        s.min_entries_per_alloc = std::min(s.min_entries_per_alloc, obj.entries);
        s.max_entries_per_alloc = std::max(s.max_entries_per_alloc, obj.entries);
      }
      s.entries += obj.entries;
    }
    out.stats = std::move(stats_);
    return out;
  }

 private:
  Value lookup(const Name& name, const Env& env) const {
    for (const EnvNode* e = env.get(); e; e = e->next.get()) {
      if (*e->name == name) return e->value;
    }
    auto it = globals_.find(name);
    if (it == globals_.end()) throw EvalError(EvalErrorKind::kUnboundVariable, name);
    return it->second;
  }

  Value atom_value(const Expr& e, const Env& env) const {
    const auto* a = e.as<Atom>();
    if (!a) throw EvalError(EvalErrorKind::kArityMismatch, "non-atomic argument");
    if (!a->is_var()) return Value::integer(a->literal());
    return lookup(a->var(), env);
  }

  std::uint64_t closure_words(const Binding& b, const BindGroup& group) {
    auto it = sizes_.find(&b);
    if (it != sizes_.end()) return it->second;
    std::uint64_t words = 1 + closure_vars(b.rhs, group, top_level_).size();
    sizes_.emplace(&b, words);
    return words;
  }

  // Demands `v`. Returns true if `v` is already a value (stored in `val_`);
  // otherwise arranges for the thunk body to be evaluated.
  bool force(Value v) {
    if (v.is_int) {
      val_ = v;
      return true;
    }
    Object& obj = heap_[v.ref];
    if (!obj.is_thunk) {
      val_ = v;
      return true;
    }
    switch (obj.state) {
      case ThunkState::kDone:
        val_ = obj.done;
        return true;
      case ThunkState::kBlackhole:
        throw EvalError(EvalErrorKind::kBlackholeLoop, "thunk re-entered during its own evaluation");
      case ThunkState::kPending:
        break;
    }
    obj.state = ThunkState::kBlackhole;
    ++obj.entries;
    stack_.push_back(UpdateK{v.ref});
    expr_ = obj.body;
    env_ = obj.env;
    return false;
  }

  // Returns true when a result is ready in `val_`.
  bool apply(Value fn, std::vector<Value> args) {
    if (args.empty()) {
      val_ = fn;
      return true;
    }
    if (fn.is_int) throw EvalError(EvalErrorKind::kArityMismatch, "integer applied to arguments");
    Object& obj = heap_[fn.ref];
    const auto& params = *obj.params;
    if (args.size() < params.size()) {
      throw EvalError(EvalErrorKind::kArityMismatch,
                      "function of arity " + std::to_string(params.size()) + " applied to " +
                          std::to_string(args.size()) + " arguments");
    }
    if (args.size() > params.size()) {
      stack_.push_back(ApplyK{std::vector<Value>(args.begin() + params.size(), args.end())});
    }
    Env env = obj.env;
    for (std::size_t i = 0; i < params.size(); ++i) env = extend(env, params[i], args[i]);
    ++obj.entries;
    expr_ = obj.body;
    env_ = std::move(env);
    return false;
  }

  // Advances a primitive frame on top of the stack.
  bool step_prim() {
    auto& k = std::get<PrimK>(stack_.back());
    while (k.next < k.args.size()) {
      Value v = k.args[k.next];
      if (!v.is_int) {
        if (!force(v)) return false;
        if (!val_.is_int) {
          throw EvalError(EvalErrorKind::kArityMismatch, "primitive applied to a function");
        }
        // `force` may have grown the stack only when returning false.
        auto& top = std::get<PrimK>(stack_.back());
        top.args[top.next] = val_;
      }
      ++std::get<PrimK>(stack_.back()).next;
    }
    PrimK done = std::move(std::get<PrimK>(stack_.back()));
    stack_.pop_back();
    std::int64_t a = done.args[0].n;
    std::int64_t b = done.args[1].n;
    switch (done.op) {
      case PrimOp::kAdd: val_ = Value::integer(wrap_add(a, b)); break;
      case PrimOp::kSub: val_ = Value::integer(wrap_sub(a, b)); break;
      case PrimOp::kMul: val_ = Value::integer(wrap_mul(a, b)); break;
      case PrimOp::kRem:
        if (b == 0) throw EvalError(EvalErrorKind::kDivideByZero, "%# by zero");
        val_ = Value::integer(b == -1 ? 0 : a % b);
        break;
      case PrimOp::kLess: val_ = Value::integer(a < b ? 1 : 0); break;
    }
    return true;
  }

  // Evaluates `expr_` in `env_`. Returns true when a value is in `val_`.
  bool eval_step() {
    const Expr& e = *expr_;
    if (const auto* a = e.as<Atom>()) {
      if (!a->is_var()) {
        val_ = Value::integer(a->literal());
        return true;
      }
      return force(lookup(a->var(), env_));
    }
    if (const auto* app = e.as<App>()) {
      std::vector<Value> args;
      args.reserve(app->args.size());
      for (const ExprPtr& x : app->args) args.push_back(atom_value(*x, env_));
      stack_.push_back(ApplyK{std::move(args)});
      return force(lookup(app->head, env_));
    }
    if (const auto* prim = e.as<PrimApp>()) {
      PrimK k{prim->op, {}, 0};
      for (const ExprPtr& x : prim->args) k.args.push_back(atom_value(*x, env_));
      stack_.push_back(std::move(k));
      return step_prim();
    }
    if (const auto* let = e.as<Let>()) {
      const std::size_t base = heap_.size();
      Env env = env_;
      for (std::size_t i = 0; i < let->group.binds.size(); ++i) {
        env = extend(env, let->group.binds[i].binder, Value::pointer(base + i));
      }
      for (const Binding& b : let->group.binds) {
        Object obj;
        obj.binder = &b.binder;
        obj.env = env;
        if (const auto* lam = std::get_if<Lambda>(&b.rhs)) {
          obj.params = &lam->params;
          obj.body = lam->body.get();
        } else {
          obj.is_thunk = true;
          obj.body = std::get<Thunk>(b.rhs).body.get();
        }
        heap_.push_back(std::move(obj));
        std::uint64_t words = closure_words(b, let->group);
        stats_.words += words;
        ++stats_.closures;
        BinderStats& s = stats_.per_binder[b.binder];
        ++s.allocations;
        s.words += words;
      }
      expr_ = let->body.get();
      env_ = std::move(env);
      return false;
    }
    const auto& cs = std::get<Case>(e.node);
    stack_.push_back(CaseK{&cs, env_});
    expr_ = cs.scrutinee.get();
    return false;
  }

  // Delivers `val_` to the top frame. Returns true if another value is ready.
  bool return_step() {
    Frame& top = stack_.back();
    if (auto* u = std::get_if<UpdateK>(&top)) {
      Object& obj = heap_[u->ref];
      obj.state = ThunkState::kDone;
      obj.done = val_;
      obj.env.reset();
      stack_.pop_back();
      return true;
    }
    if (auto* c = std::get_if<CaseK>(&top)) {
      const Case* cs = c->cs;
      Env env = std::move(c->env);
      stack_.pop_back();
      if (val_.is_int) {
        for (const Alt& alt : cs->alts) {
          if (alt.pattern == val_.n) {
            expr_ = alt.body.get();
            env_ = std::move(env);
            return false;
          }
        }
      }
      expr_ = cs->default_body.get();
      env_ = extend(std::move(env), cs->default_binder, val_);
      return false;
    }
    if (auto* k = std::get_if<ApplyK>(&top)) {
      std::vector<Value> args = std::move(k->args);
      stack_.pop_back();
      return apply(val_, std::move(args));
    }
    auto& k = std::get<PrimK>(top);
    if (!val_.is_int) throw EvalError(EvalErrorKind::kArityMismatch, "primitive applied to a function");
    k.args[k.next] = val_;
    ++k.next;
    return step_prim();
  }

  Value loop(const Expr& main) {
    expr_ = &main;
    bool have_value = false;
    for (;;) {
      if (have_value && stack_.empty()) return val_;
      if (++stats_.steps > fuel_) {
        throw EvalError(EvalErrorKind::kOutOfFuel, std::to_string(fuel_) + " steps exhausted");
      }
      have_value = have_value ? return_step() : eval_step();
    }
  }

  std::uint64_t fuel_;
  VarSet top_level_;
  std::unordered_map<Name, Value> globals_;
  std::vector<Object> heap_;
  std::vector<Frame> stack_;
  std::unordered_map<const Binding*, std::uint64_t> sizes_;
  AllocStats stats_;

  const Expr* expr_ = nullptr;
  Env env_;
  Value val_;
};

}  // namespace

EvalResult eval(const Program& p, std::uint64_t fuel) { return Machine(p, fuel).run(*p.main); }

std::int64_t compare_alloc(const Program& original, const Program& lifted, std::uint64_t fuel) {
  auto before = eval(original, fuel).stats.words;
  auto after = eval(lifted, fuel).stats.words;
  return static_cast<std::int64_t>(after) - static_cast<std::int64_t>(before);
}

const OracleEntry& OracleResult::best() const {
  return *std::min_element(entries.begin(), entries.end(),
                           [](const OracleEntry& a, const OracleEntry& b) { return a.words < b.words; });
}

OracleResult oracle_enumerate(const Program& p, std::uint64_t fuel, std::size_t max_groups) {
  OracleResult out;
  out.sites = liftable_sites(p);
  if (out.sites.size() > max_groups) {
    throw SubsetTooLarge(std::to_string(out.sites.size()) + " liftable groups exceed the limit of " +
                         std::to_string(max_groups));
  }
  const std::size_t n = out.sites.size();
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    OracleEntry entry;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (std::size_t{1} << i)) entry.subset.insert(out.sites[i]);
    }
    LiftConfig cfg;
    cfg.forced = entry.subset;
    EvalResult r = eval(lift_program(p, cfg).program, fuel);
    entry.words = r.stats.words;
    entry.rendered = r.rendered;
    out.entries.push_back(std::move(entry));
  }
  return out;
}

}  // namespace liftlab
