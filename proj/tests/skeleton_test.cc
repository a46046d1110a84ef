// Copyright 2026 The Liftlab Authors
//
// Licensed under the Apache License, Version 2.0.
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <random>

#include "generator.h"
#include "liftlab/skeleton.h"
#include "oracles.h"

namespace liftlab {
namespace {

const Cardinality kMulti = Cardinality::multi_shot();
const Cardinality kOneShot{Bound::kOne, Bound::kOne};
const Cardinality kAtMostOnce{Bound::kZero, Bound::kOne};
const Cardinality kNever{Bound::kZero, Bound::kZero};
const Cardinality kAtLeastOnce{Bound::kOne, Bound::kMany};

void collect_let_binders(const Expr& e, VarSet& out) {
  if (const auto* let = e.as<Let>()) {
    for (const Binding& b : let->group.binds) {
      out.insert(b.binder);
      collect_let_binders(*rhs_body(b.rhs), out);
    }
    collect_let_binders(*let->body, out);
  } else if (const auto* cs = e.as<Case>()) {
    collect_let_binders(*cs->scrutinee, out);
    for (const Alt& alt : cs->alts) collect_let_binders(*alt.body, out);
    out.insert(cs->default_binder);
    collect_let_binders(*cs->default_body, out);
  }
}

Growth growth(const VarSet& added, const VarSet& removed, const SkeletonPtr& s) {
  return closure_growth(added, removed, *s);
}

TEST(Growth, ArithmeticAndOrdering) {
  EXPECT_EQ(Growth(2) + Growth(-3), Growth(-1));
  EXPECT_EQ(Growth(2) + Growth::infinite(), Growth::infinite());
  EXPECT_EQ(Growth::infinite() - 5, Growth::infinite());
  EXPECT_LT(Growth(1000000), Growth::infinite());
  EXPECT_EQ(max(Growth(-1), Growth(-4)), Growth(-1));
  EXPECT_EQ(Growth::infinite().to_string(), "inf");
  EXPECT_EQ(Growth(-3).to_string(), "-3");
}

TEST(Growth, ScalingUsesLowerBoundForSavings) {
  EXPECT_EQ(scale(Growth(2), kMulti), Growth::infinite());
  EXPECT_EQ(scale(Growth(-2), kMulti), Growth(0));
  EXPECT_EQ(scale(Growth(-2), kAtLeastOnce), Growth(-2));
  EXPECT_EQ(scale(Growth(2), kAtMostOnce), Growth(2));
  EXPECT_EQ(scale(Growth::infinite(), kNever), Growth(0));
  EXPECT_EQ(scale(Growth(0), kMulti), Growth(0));
}

TEST(Skeletonize, LetAndCaseShapes) {
  Program p = parse(
      "main = let g = \\x -> +# x y in "
      "case g 1 of { 1 -> let t = thunk g 2 in t; default d -> d }");
  SkeletonPtr s = skeletonize(*p.main, {});
  EXPECT_EQ(to_sexpr(*s),
            "(seq (seq (closure g {y}) (scaled {0,*} nil)) "
            "(seq nil (alt (seq (seq (closure t {g}) (scaled {0,1} nil)) nil) nil)))");
}

TEST(Skeletonize, CapturedSetsSkipGroupAndTopLevel) {
  Program p = parse("h z = z; main = let f = \\x -> g x and g = \\y -> h w in f 1");
  SkeletonPtr s = skeletonize(*p.main, top_level_names(p));
  EXPECT_EQ(to_sexpr(*s),
            "(seq (seq (seq (closure f {}) (scaled {0,*} nil)) "
            "(seq (closure g {w}) (scaled {0,*} nil))) nil)");
}

TEST(ClosureGrowth, SingleClosure) {
  auto c = Skeleton::closure("g", {"f", "x"});
  EXPECT_EQ(growth({"x", "y"}, {"f"}, c), Growth(0));
  EXPECT_EQ(growth({"x", "y"}, {"f"}, Skeleton::closure("h", {"f"})), Growth(1));
  EXPECT_EQ(growth({"x", "y"}, {"f"}, Skeleton::closure("h", {"f", "x", "y"})), Growth(-1));
  // Closures that do not capture a removed variable are unaffected.
  EXPECT_EQ(growth({"x", "y"}, {"f"}, Skeleton::closure("k", {"z"})), Growth(0));
  EXPECT_EQ(growth({}, {"f", "g"}, Skeleton::closure("k", {"f", "g"})), Growth(-2));
}

TEST(ClosureGrowth, Combinators) {
  auto grows = Skeleton::closure("h", {"f"});
  auto shrinks = Skeleton::closure("k", {"f", "x", "y"});
  VarSet added{"x", "y"};
  VarSet removed{"f"};
  EXPECT_EQ(growth(added, removed, Skeleton::seq(grows, grows)), Growth(2));
  EXPECT_EQ(growth(added, removed, Skeleton::alt(grows, shrinks)), Growth(1));
  EXPECT_EQ(growth(added, removed, Skeleton::scaled(kMulti, grows)), Growth::infinite());
  EXPECT_EQ(growth(added, removed, Skeleton::scaled(kMulti, Skeleton::seq(grows, shrinks))),
            Growth(0));
  EXPECT_EQ(growth(added, removed, Skeleton::scaled(kOneShot, shrinks)), Growth(-1));
  EXPECT_EQ(growth(added, removed, Skeleton::scaled(kNever, Skeleton::scaled(kMulti, grows))),
            Growth(0));
  EXPECT_EQ(growth(added, removed, Skeleton::nil()), Growth(0));
}

TEST(ClosureGrowth, OverlappingSetsViolateTheContract) {
  EXPECT_THROW(growth({"f"}, {"f"}, Skeleton::nil()), ContractError);
  EXPECT_THROW(closure_growth_direct({"f"}, {"f"}, *make_lit(1), {}), ContractError);
}

TEST(ClosureGrowth, DirectRouteMatchesOnDataFiles) {
  for (const char* name : {"intro_lift.stg", "intro_reject.stg", "growth_one.stg",
                           "growth_two.stg", "growth_three.stg", "required_sets.stg"}) {
    Program p = testing::load_data_program(name);
    VarSet top = top_level_names(p);
    for (const TopBind& tb : p.top_binds) {
      for (const Name& r : {"a", "f", "g", "x"}) {
        VarSet removed{r};
        VarSet added = set_minus(VarSet{"a", "b", "x", "y"}, removed);
        EXPECT_EQ(closure_growth(added, removed, *skeletonize(*tb.body, top)),
                  closure_growth_direct(added, removed, *tb.body, top))
            << name << " " << r;
      }
    }
  }
}

TEST(ClosureGrowth, DirectRouteMatchesOnRandomPrograms) {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 150; ++i) {
    Program p = testing::prepare(testing::generate_program(rng));
    VarSet top = top_level_names(p);
    std::vector<const Expr*> bodies{p.main.get()};
    VarSet binders;
    for (const TopBind& tb : p.top_binds) {
      bodies.push_back(tb.body.get());
      binders.insert(tb.params.begin(), tb.params.end());
      collect_let_binders(*tb.body, binders);
    }
    collect_let_binders(*p.main, binders);
    std::vector<Name> names(binders.begin(), binders.end());
    for (int pair = 0; pair < 10; ++pair) {
      VarSet added;
      VarSet removed;
      for (const Name& n : names) {
        int roll = std::uniform_int_distribution<int>(0, 2)(rng);
        if (roll == 0) added.insert(n);
        if (roll == 1) removed.insert(n);
      }
      for (const Expr* e : bodies) {
        ASSERT_EQ(closure_growth(added, removed, *skeletonize(*e, top)),
                  closure_growth_direct(added, removed, *e, top));
      }
    }
  }
}

TEST(MapCaptured, RewritesEveryClosure) {
  auto s = Skeleton::seq(Skeleton::closure("a", {"f"}),
                         Skeleton::scaled(kMulti, Skeleton::closure("b", {"f", "z"})));
  auto mapped = map_captured(s, [](const VarSet& vs) {
    VarSet out = vs;
    if (out.erase("f")) out.insert({"x", "y"});
    return out;
  });
  EXPECT_EQ(to_sexpr(*mapped), "(seq (closure a {x y}) (scaled {0,*} (closure b {x y z})))");
  EXPECT_TRUE(equal(*s, *s));
  EXPECT_FALSE(equal(*s, *mapped));
}

}  // namespace
}  // namespace liftlab
