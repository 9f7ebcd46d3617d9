#include <gtest/gtest.h>

#include <string>

#include "mintypes/derive.hpp"
#include "mintypes/textio.hpp"

using namespace mintypes;

namespace {

SType ty(const char* s) { return parse_type(s); }
Env env(const char* s) { return parse_env(s); }
Term T(const char* s) { return parse_term(s); }

// x:[sigma], y:[a0, a1] |- x y (I D) : tau, with sigma = [a0, a1] -> [] -> tau.
Derivation measure_example() {
  SType sigma = ty("[a0, a1] -> [] -> tau");
  Derivation xy = make_elim(Rule::ArrE, make_var("x", sigma),
                            make_m(T("y"), {make_var("y", ty("a0")), make_var("y", ty("a1"))}));
  return make_elim(Rule::ArrE, xy, make_m(T("(\\z. z) (\\w. w w)"), {}));
}

Derivation church_search(int n) {
  std::string body = "x";
  for (int i = 0; i < n; ++i) body = "f (" + body + ")";
  Term t = T(("\\f. \\x. " + body).c_str());
  std::string mult = "[";
  for (int i = 0; i < n; ++i) mult += std::string(i ? ", " : "") + "[a] -> a";
  SType goal = parse_type((mult + "] -> [a] -> a").c_str());
  auto ds = derive_search(Env{}, t, goal, SystemId::H);
  EXPECT_EQ(ds.size(), 1u) << n;
  return ds.at(0);
}

}  // namespace

TEST(Derive, MeasureExample) {
  Derivation d = measure_example();
  EXPECT_TRUE(is_valid(d, SystemId::H)) << check_derivation(d, SystemId::H).at(0).to_string();
  EXPECT_EQ(meas(d), 5u);
  EXPECT_EQ(typed_positions(d).size(), 4u);
  EXPECT_TRUE(is_pi_normal(d));
  EXPECT_TRUE(alpha_equal(derivation_approximant(d), T("x y *")));
  // The untyped argument is a redex, so the subject is not normal.
  EXPECT_FALSE(is_normal(d.subject()));
}

TEST(Derive, CheckerNamesTheBrokenRule) {
  Derivation d = measure_example();
  d.premises[0].premises[1].premises.pop_back();  // y:[a0] |- y : [a0, a1] no longer adds up
  auto diags = check_derivation(d, SystemId::H);
  ASSERT_FALSE(diags.empty());
  EXPECT_EQ(diags[0].rule, "m");
  EXPECT_EQ(diags[0].system, SystemId::H);
}

TEST(Derive, EmptyMultisetRejectedInHe) {
  Derivation d = make_intro(Rule::ArrI, "x", make_var("y", ty("a")));
  EXPECT_TRUE(is_valid(d, SystemId::H));
  EXPECT_FALSE(is_valid(d, SystemId::He));
  EXPECT_TRUE(is_valid(d, SystemId::S));
}

TEST(Derive, WeakAxiom) {
  Derivation d = make_var_w(env("x:[a, b]"), "x", ty("a"));
  EXPECT_TRUE(is_valid(d, SystemId::Hw));
  EXPECT_FALSE(is_valid(d, SystemId::H));
  EXPECT_TRUE(derivable(env("x:[a, b]"), T("x"), ty("a"), SystemId::Hw));
  EXPECT_FALSE(derivable(env("x:[a, b]"), T("x"), ty("a"), SystemId::H));
}

TEST(Derive, ChurchNumeralsHaveIteratedTypes) {
  for (int n = 0; n < 4; ++n) {
    Derivation d = church_search(n);
    EXPECT_TRUE(is_valid(d, SystemId::H));
    EXPECT_EQ(meas(d), static_cast<std::size_t>(2 * n + 1 + 2));  // n f's, n apps, one x, two lambdas
  }
}

TEST(Derive, PrincipalTypingOfChurchNumerals) {
  for (int n = 0; n < 4; ++n) {
    std::string body = "x";
    for (int i = 0; i < n; ++i) body = "f (" + body + ")";
    auto ts = infer_principal_nf(T(("\\f. \\x. " + body).c_str()), SystemId::H);
    ASSERT_FALSE(ts.empty());
    auto [g, s] = ts.back();
    EXPECT_TRUE(g.empty());
    ASSERT_EQ(s.arity(), 2u);
    EXPECT_EQ(s.domain().size(), static_cast<std::size_t>(n));
    for (const auto& f : s.domain().items()) EXPECT_EQ(f, ty("[a1] -> a1"));
    EXPECT_EQ(s.codomain(), ty("[a1] -> a1"));
    for (const auto& [g2, s2] : ts) EXPECT_TRUE(derivable(g2, T(("\\f. \\x. " + body).c_str()), s2, SystemId::H));
  }
}

TEST(Derive, SearchNeedsNormalSubjects) {
  EXPECT_THROW(derive_search(Env{}, T("(\\x.x) y"), Goal{ty("a")}, SystemId::H), PreconditionError);
  EXPECT_THROW(derive_search(Env{}, T("x *"), Goal{ty("a")}, SystemId::Hew), PreconditionError);
  EXPECT_THROW(derive_search(Env{}, T("\\x. x"), Goal{ty("[] -> a")}, SystemId::He), PreconditionError);
}

TEST(Derive, SplitApplicationErasesArguments) {
  // S types x N with N untyped but present.
  EXPECT_TRUE(derivable(env("x:[[] -> s], y:[a]"), T("x y"), ty("s"), SystemId::S));
  EXPECT_FALSE(derivable(env("x:[[] -> s]"), T("x y"), ty("s"), SystemId::S));
  EXPECT_FALSE(derivable(env("x:[[] -> s], y:[a]"), T("x y"), ty("s"), SystemId::H));
  EXPECT_TRUE(derivable(env("x:[[] -> s]"), T("x y"), ty("s"), SystemId::H));
}

TEST(Derive, StandardizeUsesTheFakeArgument) {
  auto ds = derive_search(env("x:[[] -> s], y:[[a] -> a]"), T("x y"), Goal{ty("s")}, SystemId::Sw);
  ASSERT_FALSE(ds.empty());
  for (const auto& d : ds) {
    Derivation s = standardize(d);
    EXPECT_TRUE(is_standard(s));
    EXPECT_TRUE(is_valid(s, SystemId::Sw));
  }
  auto id = derive_search(env("x:[[] -> s]"), T("x (\\y0. y0)"), Goal{ty("s")}, SystemId::Sw);
  ASSERT_FALSE(id.empty());
  EXPECT_TRUE(is_standard(id[0]));
}

TEST(Derive, LiftRaisesOmegaPositions) {
  auto ds = derive_search(env("x:[[] -> a]"), T("x *"), Goal{ty("a")}, SystemId::H);
  ASSERT_EQ(ds.size(), 1u);
  Term target = T("x ((\\y. y y) (\\y. y y))");
  Derivation l = lift_derivation(ds[0], target);
  EXPECT_TRUE(alpha_equal(l.subject(), target));
  EXPECT_TRUE(is_valid(l, SystemId::H));
  EXPECT_EQ(meas(l), meas(ds[0]));
  EXPECT_THROW(lift_derivation(ds[0], T("y *")), PreconditionError);
}

TEST(Derive, SubjectReductionDecreasesMeasure) {
  // (\x. y x x) z with both copies of x typed.
  Derivation body = make_elim(Rule::ArrE,
                              make_elim(Rule::ArrE, make_var("y", ty("[a] -> [b] -> c")),
                                        make_m(T("x"), {make_var("x", ty("a"))})),
                              make_m(T("x"), {make_var("x", ty("b"))}));
  Derivation lam = make_intro(Rule::ArrI, "x", body);
  Derivation d = make_elim(Rule::ArrE, lam, make_m(T("z"), {make_var("z", ty("a")), make_var("z", ty("b"))}));
  ASSERT_TRUE(is_valid(d, SystemId::H));
  Derivation r = subject_reduce(d, {}, SystemId::H);
  EXPECT_TRUE(is_valid(r, SystemId::H));
  EXPECT_TRUE(alpha_equal(r.subject(), T("y z z")));
  EXPECT_LT(meas(r), meas(d));
  EXPECT_EQ(r.env(), d.env());
}

TEST(Derive, ErasingStepNeedsWeakeningInHe) {
  // x:[s] |- (\y. \z. z) x : [t] -> t
  Derivation lam = make_intro(Rule::ArrIEmpty, "y",
                              make_intro(Rule::ArrINonempty, "z", make_var("z", ty("t"))), ty("s"));
  Derivation d = make_elim(Rule::ArrE, lam, make_m(T("x"), {make_var("x", ty("s"))}));
  ASSERT_TRUE(is_valid(d, SystemId::He)) << check_derivation(d, SystemId::He).at(0).to_string();
  EXPECT_THROW(subject_reduce(d, {}, SystemId::He), Error);
  EXPECT_FALSE(derivable(env("x:[s]"), T("\\z. z"), ty("[t] -> t"), SystemId::He));
  EXPECT_TRUE(derivable(env("x:[s]"), T("\\z. z"), ty("[t] -> t"), SystemId::Hew));
}

TEST(Derive, WeakenAddsResources) {
  EXPECT_THROW(weaken(make_var("x", ty("a")), env("y:[b]")), Error);
  Derivation d = make_var_w(env("x:[a]"), "x", ty("a"));
  Derivation w = weaken(d, env("y:[b]"));
  EXPECT_TRUE(is_valid(w, SystemId::Hw));
  EXPECT_EQ(w.env(), env("x:[a], y:[b]"));
}

TEST(Derive, DerivationKeysDistinguishTrees) {
  auto ds = derive_search(env("x:[[a] -> a, [a] -> a], y:[a]"), T("x (x y)"), Goal{ty("a")}, SystemId::H);
  ASSERT_EQ(ds.size(), 1u);  // both copies of [a] -> a are equal, so one tree
  auto two = derive_search(env("x:[[a] -> b, [b] -> c], y:[a]"), T("x (x y)"), Goal{ty("c")}, SystemId::H);
  ASSERT_EQ(two.size(), 1u);
  EXPECT_NE(derivation_key(ds[0]), derivation_key(two[0]));
}
