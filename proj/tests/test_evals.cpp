#include "cdual/evals.hpp"
#include "cdual/pgl2.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

using namespace cdual;

namespace {

const Rational one(1);

TrialConfig few(std::size_t n = 6) {
  TrialConfig c;
  c.trials = n;
  return c;
}

}  // namespace

TEST(Evals, ElementaryWords) {
  const std::vector<Rational> x{Rational(2), Rational(3)};
  const auto e = ev(1, {1}, x);
  // H(2) E H(3) = [[6, 2], [0, 1]]
  EXPECT_EQ(e, pgl2::mat(Rational(6), Rational(2), Rational(0), one));
  const auto f = ev(1, {-1}, x);
  EXPECT_EQ(f, pgl2::mat(Rational(6), Rational(0), Rational(3), one));
  EXPECT_EQ(ev_red(1, {1}, x), pgl2::mat(Rational(2), Rational(2), Rational(0), one));
}

// ev of a concatenation is the product of ev of the factors, glued at the frozen coordinates.
TEST(Evals, EvaluationIsMultiplicative) {
  std::mt19937_64 g(40);
  for (int i = 0; i < 100; ++i) {
    const Word a = fixtures::random_word(g, 2, 0, 3), b = fixtures::random_word(g, 2, 0, 3);
    Word ab = a;
    ab.insert(ab.end(), b.begin(), b.end());
    const auto x1 = fixtures::random_rational_point(g, Layout::of(a, 2).size());
    const auto x2 = fixtures::random_rational_point(g, Layout::of(b, 2).size());
    EXPECT_EQ(ev(2, ab, amalgamate_points(a, b, 2, x1, x2)), ev(2, a, x1) * ev(2, b, x2));
  }
}

TEST(Evals, MutationPreservesEvaluation) {
  const WordContext ctx(parse_cartan("A2"));
  for (const char* text : {"1,2,1", "-2,-1,-2", "1,-1", "2,-2,1"}) {
    const Word w = parse_word(text);
    for (const Move& mv : ctx.applicable_moves(w, {MoveKind::PositiveD, MoveKind::NegativeD, MoveKind::Mixed2})) {
      const RationalMap m = dmove_transform(ctx, w, mv);
      const auto v = maps_equal_probabilistic(
          [&](const auto& x) { return std::make_pair(flatten(ev(2, w, x)), flatten(ev(2, mv.after, m.apply(x)))); },
          Layout::of(w, 2).size(), few(), Compare::Projective);
      EXPECT_TRUE(v.equal()) << text;
    }
  }
}

TEST(Evals, TwistedEvaluationMatchesClosedFormsA1) {
  const WordContext ctx(parse_cartan("A1"));
  const WeylElement e = WeylElement::identity(ctx.cartan()), s = ctx.w0();
  const auto plan = make_ev_hat_plan(ctx, {1}, e, e);
  const auto p11 = make_ev_hat_plan(ctx, {1, 1}, s, e);
  const auto pb1 = make_ev_hat_plan(ctx, {-1, 1}, s, s);
  const auto v = maps_equal_probabilistic(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x[0])>;
        // sample s and feed t = s^2 as the right frozen coordinate
        const T sv = x[2], t = sv * sv;
        std::vector<T> lhs, rhs;
        const auto a = ev_hat(plan, std::vector<T>{x[0], t});
        const auto b = pgl2::ev_hat_1(x[0], sv);
        const auto c = ev_hat(p11, std::vector<T>{x[0], x[1], t});
        const auto d = pgl2::ev_hat_1_1(x[0], x[1], sv);
        const auto f = ev_hat(pb1, std::vector<T>{x[0], x[1], t});
        const auto h = pgl2::ev_hat_bar1_1(x[0], x[1], sv);
        for (const auto* m : {&a, &c, &f}) {
          const auto nf = projective_normal_form(*m);
          lhs.insert(lhs.end(), nf.begin(), nf.end());
        }
        for (const auto* m : {&b, &d, &h}) {
          const auto nf = projective_normal_form(*m);
          rhs.insert(rhs.end(), nf.begin(), nf.end());
        }
        return std::make_pair(lhs, rhs);
      },
      3, few(10));
  EXPECT_TRUE(v.equal()) << (v.failures.empty() ? v.note : v.failures[0].label);
}

TEST(Evals, StarTransportIsAnInvolution) {
  std::mt19937_64 g(41);
  for (const char* t : {"A1", "A2", "A3"}) {
    const WordContext ctx(parse_cartan(t));
    const int r = ctx.cartan().rank;
    for (int i = 0; i < 100; ++i) {
      const Word w = fixtures::random_word(g, r, 0, 5);
      const auto x = fixtures::random_rational_point(g, Layout::of(w, r).size());
      const auto y = star_transport(ctx, w, x);
      EXPECT_EQ(y.word, ctx.star_word(w));
      const auto z = star_transport(ctx, y.word, y.values);
      EXPECT_EQ(z.word, w);
      EXPECT_EQ(z.values, x);
    }
  }
}

TEST(Evals, ConjugationPreservesTraceAndDeterminant) {
  const auto g = pgl2::mat(Rational(2), Rational(1), Rational(3), Rational(2));
  const auto T = dckp_T(1, g);
  EXPECT_EQ(determinant(T), determinant(g));
  // conjugation preserves the trace
  EXPECT_EQ(T(0, 0) + T(1, 1), g(0, 0) + g(1, 1));
}

TEST(Evals, TauProductHasUnitDeterminant) {
  const WordContext ctx(parse_cartan("A2"));
  const auto plan = make_tau_product_plan(ctx, {-1, -2, -1});
  std::mt19937_64 g(42);
  for (int i = 0; i < 20; ++i) {
    const auto x = fixtures::random_rational_point(g, Layout::of(plan.word, 2).size());
    EXPECT_EQ(determinant(tau_product(plan, x)), one);
  }
}

TEST(Evals, PreconditionsAreChecked) {
  const WordContext ctx(parse_cartan("A1"));
  const WeylElement e = WeylElement::identity(ctx.cartan());
  EXPECT_THROW(make_ev_hat_plan(ctx, {1, 1}, e, e), PreconditionFailed);
}
