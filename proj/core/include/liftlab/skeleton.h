// Copyright 2026 The Liftlab Authors
//
// Licensed under the Apache License, Version 2.0.
// SPDX-License-Identifier: Apache-2.0

// Allocation skeletons and closure-growth estimation.
//
// A skeleton keeps only what matters for heap allocation: which closures are
// allocated and what they capture, how allocations are sequenced or chosen
// between, and how often RHS bodies run per allocation. `closure_growth`
// measures, in words, how closure sizes change when every reference to a
// variable in `removed` is replaced by the variables in `added`.

#ifndef LIFTLAB_SKELETON_H_
#define LIFTLAB_SKELETON_H_

#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>

#include "liftlab/analysis.h"

namespace liftlab {

/// Words of closure growth, or unbounded.
class Growth {
 public:
  constexpr Growth() = default;
  constexpr explicit Growth(std::int64_t words) : words_(words) {}
  static constexpr Growth infinite() {
    Growth g;
    g.infinite_ = true;
    return g;
  }

  bool is_infinite() const { return infinite_; }
  /// Only meaningful when finite.
  std::int64_t words() const { return words_; }

  friend Growth operator+(Growth a, Growth b) {
    if (a.infinite_ || b.infinite_) return infinite();
    return Growth(a.words_ + b.words_);
  }
  friend Growth operator-(Growth a, std::int64_t b) {
    if (a.infinite_) return a;
    return Growth(a.words_ - b);
  }
  friend bool operator==(Growth a, Growth b) {
    return a.infinite_ == b.infinite_ && (a.infinite_ || a.words_ == b.words_);
  }
  friend std::strong_ordering operator<=>(Growth a, Growth b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ <=> b.infinite_;
    return a.words_ <=> b.words_;
  }

  std::string to_string() const;

 private:
  std::int64_t words_ = 0;
  bool infinite_ = false;
};

Growth max(Growth a, Growth b);

/// Scales per-entry growth by entry bounds: negative growth by the lower
/// bound, everything else by the upper bound. A zero bound yields zero even
/// for infinite growth.
Growth scale(Growth per_entry, const Cardinality& card);

struct Skeleton;
using SkeletonPtr = std::shared_ptr<const Skeleton>;

struct Skeleton {
  enum class Kind : std::uint8_t { kNil, kClosure, kSeq, kAlt, kScaled };

  Kind kind = Kind::kNil;
  Name binder;             // kClosure
  VarSet captured;         // kClosure
  Cardinality card;        // kScaled
  SkeletonPtr left;        // kSeq, kAlt, kScaled (inner)
  SkeletonPtr right;       // kSeq, kAlt

  static SkeletonPtr nil();
  static SkeletonPtr closure(Name binder, VarSet captured);
  static SkeletonPtr seq(SkeletonPtr a, SkeletonPtr b);
  static SkeletonPtr alt(SkeletonPtr a, SkeletonPtr b);
  static SkeletonPtr scaled(Cardinality card, SkeletonPtr inner);
};

bool equal(const Skeleton& a, const Skeleton& b);

/// Abstracts an expression. Captured sets exclude `top_level` names and the
/// binders of the closure's own group.
SkeletonPtr skeletonize(const Expr& e, const VarSet& top_level);

/// `Scaled(card, skeleton of body)` for one RHS.
SkeletonPtr skeletonize_rhs(const Rhs& rhs, const VarSet& top_level);

/// Rewrites every closure's captured set.
SkeletonPtr map_captured(const SkeletonPtr& s, const std::function<VarSet(const VarSet&)>& f);

/// S-expression rendering, e.g. `(seq (closure g {f x}) nil)`.
std::string to_sexpr(const Skeleton& s);

class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Closure growth over a skeleton. Throws ContractError when `added` and
/// `removed` overlap.
Growth closure_growth(const VarSet& added, const VarSet& removed, const Skeleton& s);

/// The same quantity computed by direct recursion over the expression tree,
/// one function per syntactic sort. Kept independent of the skeleton path so
/// each can check the other.
Growth closure_growth_direct(const VarSet& added, const VarSet& removed, const Expr& e,
                             const VarSet& top_level);

}  // namespace liftlab

#endif  // LIFTLAB_SKELETON_H_
