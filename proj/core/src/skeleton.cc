// Copyright 2026 The Liftlab Authors
//
// Licensed under the Apache License, Version 2.0.
// SPDX-License-Identifier: Apache-2.0

#include "liftlab/skeleton.h"

namespace liftlab {

std::string Growth::to_string() const {
  return infinite_ ? std::string("inf") : std::to_string(words_);
}

Growth max(Growth a, Growth b) { return a < b ? b : a; }

Growth scale(Growth per_entry, const Cardinality& card) {
  Bound factor = (!per_entry.is_infinite() && per_entry.words() < 0) ? card.lower : card.upper;
  switch (factor) {
    case Bound::kZero: return Growth(0);
    case Bound::kOne: return per_entry;
    case Bound::kMany:
      if (per_entry.is_infinite() || per_entry.words() > 0) return Growth::infinite();
      return Growth(0);
  }
  return per_entry;
}

SkeletonPtr Skeleton::nil() {
  static const SkeletonPtr kNil = std::make_shared<const Skeleton>();
  return kNil;
}

SkeletonPtr Skeleton::closure(Name binder, VarSet captured) {
  Skeleton s;
  s.kind = Kind::kClosure;
  s.binder = std::move(binder);
  s.captured = std::move(captured);
  return std::make_shared<const Skeleton>(std::move(s));
}

SkeletonPtr Skeleton::seq(SkeletonPtr a, SkeletonPtr b) {
  Skeleton s;
  s.kind = Kind::kSeq;
  s.left = std::move(a);
  s.right = std::move(b);
  return std::make_shared<const Skeleton>(std::move(s));
}

SkeletonPtr Skeleton::alt(SkeletonPtr a, SkeletonPtr b) {
  Skeleton s;
  s.kind = Kind::kAlt;
  s.left = std::move(a);
  s.right = std::move(b);
  return std::make_shared<const Skeleton>(std::move(s));
}

SkeletonPtr Skeleton::scaled(Cardinality card, SkeletonPtr inner) {
  Skeleton s;
  s.kind = Kind::kScaled;
  s.card = card;
  s.left = std::move(inner);
  return std::make_shared<const Skeleton>(std::move(s));
}

bool equal(const Skeleton& a, const Skeleton& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Skeleton::Kind::kNil: return true;
    case Skeleton::Kind::kClosure: return a.binder == b.binder && a.captured == b.captured;
    case Skeleton::Kind::kSeq:
    case Skeleton::Kind::kAlt: return equal(*a.left, *b.left) && equal(*a.right, *b.right);
    case Skeleton::Kind::kScaled: return a.card == b.card && equal(*a.left, *b.left);
  }
  return false;
}

SkeletonPtr skeletonize_rhs(const Rhs& rhs, const VarSet& top_level) {
  return Skeleton::scaled(cardinality(rhs), skeletonize(*rhs_body(rhs), top_level));
}

SkeletonPtr skeletonize(const Expr& e, const VarSet& top_level) {
  if (const auto* let = e.as<Let>()) {
    SkeletonPtr binds;
    for (const Binding& b : let->group.binds) {
      SkeletonPtr one =
          Skeleton::seq(Skeleton::closure(b.binder, closure_vars(b.rhs, let->group, top_level)),
                        skeletonize_rhs(b.rhs, top_level));
      binds = binds ? Skeleton::seq(binds, one) : one;
    }
    if (!binds) binds = Skeleton::nil();
    return Skeleton::seq(binds, skeletonize(*let->body, top_level));
  }
  if (const auto* cs = e.as<Case>()) {
    SkeletonPtr choice;
    for (const Alt& alt : cs->alts) {
      SkeletonPtr s = skeletonize(*alt.body, top_level);
      choice = choice ? Skeleton::alt(choice, s) : s;
    }
    SkeletonPtr fallback = skeletonize(*cs->default_body, top_level);
    choice = choice ? Skeleton::alt(choice, fallback) : fallback;
    return Skeleton::seq(skeletonize(*cs->scrutinee, top_level), choice);
  }
  return Skeleton::nil();
}

SkeletonPtr map_captured(const SkeletonPtr& s, const std::function<VarSet(const VarSet&)>& f) {
  switch (s->kind) {
    case Skeleton::Kind::kNil: return s;
    case Skeleton::Kind::kClosure: return Skeleton::closure(s->binder, f(s->captured));
    case Skeleton::Kind::kSeq: return Skeleton::seq(map_captured(s->left, f), map_captured(s->right, f));
    case Skeleton::Kind::kAlt: return Skeleton::alt(map_captured(s->left, f), map_captured(s->right, f));
    case Skeleton::Kind::kScaled: return Skeleton::scaled(s->card, map_captured(s->left, f));
  }
  return s;
}

std::string to_sexpr(const Skeleton& s) {
  switch (s.kind) {
    case Skeleton::Kind::kNil: return "nil";
    case Skeleton::Kind::kClosure: {
      std::string out = "(closure " + s.binder + " {";
      bool first = true;
      for (const Name& v : s.captured) {
        if (!first) out += " ";
        out += v;
        first = false;
      }
      return out + "})";
    }
    case Skeleton::Kind::kSeq: return "(seq " + to_sexpr(*s.left) + " " + to_sexpr(*s.right) + ")";
    case Skeleton::Kind::kAlt: return "(alt " + to_sexpr(*s.left) + " " + to_sexpr(*s.right) + ")";
    case Skeleton::Kind::kScaled:
      return "(scaled " + print_cardinality(s.card) + " " + to_sexpr(*s.left) + ")";
  }
  return "?";
}

//===----------------------------------------------------------------------===//
// Closure growth over skeletons
//===----------------------------------------------------------------------===//

namespace {

void require_disjoint(const VarSet& added, const VarSet& removed) {
  for (const Name& v : added) {
    if (removed.count(v)) throw ContractError("added and removed sets share '" + v + "'");
  }
}

Growth growth_of(const VarSet& added, const VarSet& removed, const Skeleton& s) {
  switch (s.kind) {
    case Skeleton::Kind::kNil: return Growth(0);
    case Skeleton::Kind::kClosure: {
      std::int64_t dropped = 0;
      for (const Name& v : s.captured) dropped += removed.count(v);
      if (dropped == 0) return Growth(0);
      std::int64_t gained = 0;
      for (const Name& v : added) gained += !s.captured.count(v);
      return Growth(gained - dropped);
    }
    case Skeleton::Kind::kSeq:
      return growth_of(added, removed, *s.left) + growth_of(added, removed, *s.right);
    case Skeleton::Kind::kAlt:
      return max(growth_of(added, removed, *s.left), growth_of(added, removed, *s.right));
    case Skeleton::Kind::kScaled: return scale(growth_of(added, removed, *s.left), s.card);
  }
  return Growth(0);
}

}  // namespace

Growth closure_growth(const VarSet& added, const VarSet& removed, const Skeleton& s) {
  require_disjoint(added, removed);
  return growth_of(added, removed, s);
}

//===----------------------------------------------------------------------===//
// Direct route: expressions, binding groups, right-hand sides
//===----------------------------------------------------------------------===//

namespace {

struct DirectGrowth {
  const VarSet& added;
  const VarSet& removed;
  const VarSet& top_level;

  Growth expr(const Expr& e) const {
    if (const auto* let = e.as<Let>()) return bind(let->group) + expr(*let->body);
    if (const auto* cs = e.as<Case>()) {
      Growth worst = expr(*cs->default_body);
      for (const Alt& alt : cs->alts) {
        Growth g = expr(*alt.body);
        if (g > worst) worst = g;
      }
      return expr(*cs->scrutinee) + worst;
    }
    // Variables, calls and primitive operations allocate nothing.
    return Growth(0);
  }

  Growth bind(const BindGroup& group) const {
    Growth total(0);
    for (const Binding& b : group.binds) {
      VarSet captured;
      for (const Name& v : free_vars(b.rhs)) {
        bool own = false;
        for (const Binding& m : group.binds) own = own || m.binder == v;
        if (!own && !top_level.count(v)) captured.insert(v);
      }
      std::int64_t nu = 0;
      for (const Name& v : captured) nu += removed.count(v);
      std::int64_t fresh = 0;
      for (const Name& v : added) fresh += !captured.count(v);
      Growth growth(nu > 0 ? fresh - nu : 0);
      total = total + growth + rhs(b.rhs);
    }
    return total;
  }

  Growth rhs(const Rhs& r) const {
    Growth n = expr(*rhs_body(r));
    Cardinality card = cardinality(r);
    bool negative = !n.is_infinite() && n.words() < 0;
    Bound factor = negative ? card.lower : card.upper;
    if (factor == Bound::kZero) return Growth(0);
    if (factor == Bound::kOne) return n;
    return (n.is_infinite() || n.words() > 0) ? Growth::infinite() : Growth(0);
  }
};

}  // namespace

Growth closure_growth_direct(const VarSet& added, const VarSet& removed, const Expr& e,
                             const VarSet& top_level) {
  require_disjoint(added, removed);
  return DirectGrowth{added, removed, top_level}.expr(e);
}

}  // namespace liftlab
