#include "cdual/maps.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

using namespace cdual;
using State = WordContext::State;

namespace {

TrialConfig few(std::size_t n = 4, std::uint64_t seed = 1) {
  TrialConfig c;
  c.trials = n;
  c.rng_seed = seed;
  return c;
}

// m is the identity on its source.
Verdict is_identity(const RationalMap& m, const TrialConfig& cfg) {
  const std::size_t dim = Layout::of(m.source(), m.rank()).size();
  return maps_equal_probabilistic([&](const auto& x) { return std::make_pair(m.apply(x), x); }, dim, cfg);
}

std::size_t dim_of(const Word& w, int rank) { return Layout::of(w, rank).size(); }

State state_in_top_class(const WordContext& ctx, const Word& w) {
  for (const auto& [v, w1] : ctx.classes(w))
    if (v == ctx.w0()) return State{w, w1};
  throw std::logic_error("word has no class at v = w0");
}

}  // namespace

TEST(Points, SplitAndAmalgamateRoundTrip) {
  std::mt19937_64 g(20);
  for (int i = 0; i < 100; ++i) {
    const Word a = fixtures::random_word(g, 2, 0, 3), b = fixtures::random_word(g, 2, 0, 3);
    Word ab = a;
    ab.insert(ab.end(), b.begin(), b.end());
    const auto x = fixtures::random_rational_point(g, dim_of(ab, 2));
    const auto [x1, x2] = split_point(a, b, 2, x);
    EXPECT_EQ(amalgamate_points(a, b, 2, x1, x2), x);
  }
}

TEST(Points, AmalgamationIsAssociative) {
  std::mt19937_64 g(21);
  for (int i = 0; i < 100; ++i) {
    const Word a = fixtures::random_word(g, 2, 0, 3), b = fixtures::random_word(g, 2, 0, 3),
               c = fixtures::random_word(g, 2, 0, 3);
    Word ab = a, bc = b;
    ab.insert(ab.end(), b.begin(), b.end());
    bc.insert(bc.end(), c.begin(), c.end());
    const auto x1 = fixtures::random_rational_point(g, dim_of(a, 2));
    const auto x2 = fixtures::random_rational_point(g, dim_of(b, 2));
    const auto x3 = fixtures::random_rational_point(g, dim_of(c, 2));
    EXPECT_EQ(amalgamate_points(ab, c, 2, amalgamate_points(a, b, 2, x1, x2), x3),
              amalgamate_points(a, bc, 2, x1, amalgamate_points(b, c, 2, x2, x3)));
  }
}

TEST(Maps, MutationIsAnInvolutionOnPoints) {
  std::mt19937_64 g(22);
  int tested = 0;
  for (const char* t : {"A2", "B2", "G2"}) {
    const CartanData c = parse_cartan(t);
    for (int here = 0; here < 34;) {
      const Seed s = seed_for_word(c, fixtures::random_word(g, 2, 2, 6));
      for (std::size_t k = 0; k < s.size() && here < 34; ++k) {
        if (s.frozen[k]) continue;
        const RationalMap m = mutation_map(s, k).then(mutation_map(mutate_seed(s, k), k));
        EXPECT_TRUE(is_identity(m, few(3, tested + 1)).equal()) << t << " " << format_word(s.word) << " k=" << k;
        ++here;
        ++tested;
      }
    }
  }
  EXPECT_GE(tested, 100);
}

TEST(Maps, TropicalMutationIsAnInvolutionOnPoints) {
  std::mt19937_64 g(23);
  int tested = 0;
  const CartanData c = parse_cartan("B2");
  while (tested < 100) {
    const Seed s = seed_for_word(c, fixtures::random_word(g, 2, 1, 6));
    for (std::size_t k = 0; k < s.size() && tested < 100; ++k) {
      if (!s.frozen[k] || (s.cover_left[k] && s.cover_right[k])) continue;
      const RationalMap first = tropical_map(s, k);
      Seed t = tropical_mutate_seed(s, k);
      t.word = first.target();  // the seed label follows the tau-move
      const RationalMap m = first.then(tropical_map(t, k));
      EXPECT_TRUE(is_identity(m, few(2, tested + 1)).equal());
      ++tested;
    }
  }
}

TEST(Maps, DMoveShadowsAreWordSeeds) {
  for (const char* t : {"A2", "B2", "G2"}) {
    const WordContext ctx(parse_cartan(t));
    const int m = ctx.cartan().move_order(1, 2);
    for (int sgn : {1, -1})
      for (int first : {1, 2}) {
        Word w;
        for (int i = 0; i < m; ++i) w.push_back(sgn * (i % 2 == 0 ? first : 3 - first));
        const DMovePlan plan = dmove_plan(ctx, w, 0);
        EXPECT_TRUE(dmove_seed_shadow(ctx, w, 0).same_matrix(seed_for_word(ctx.cartan(), plan.target)))
            << t << " " << format_word(w);
      }
  }
}

TEST(Maps, TransformsComposeWithTheirInverses) {
  const WordContext ctx(parse_cartan("A2"));
  for (const char* text : {"1,2,1", "-1,-2,-1", "1,-2", "2,1,2,-1", "1,2,1,2"}) {
    const Word w = parse_word(text);
    for (const Move& mv : ctx.applicable_moves(w, {MoveKind::PositiveD, MoveKind::NegativeD, MoveKind::Mixed2})) {
      const RationalMap m = dmove_transform(ctx, w, mv);
      EXPECT_EQ(m.target(), mv.after);
      EXPECT_TRUE(is_identity(m.then(m.inverse()), few()).equal()) << text;
    }
  }
}

TEST(Maps, DisjointSwapsCommuteOnPoints) {
  const WordContext ctx(parse_cartan("A3"));
  for (const char* text : {"1,-1,3,-3", "-2,2,1,-3,3", "1,-3,2,-2"}) {
    const Word w = parse_word(text);
    const auto moves = ctx.applicable_moves(w, {MoveKind::Mixed2});
    for (const Move& a : moves)
      for (const Move& b : moves) {
        if (b.position < a.position + 2) continue;
        const RationalMap ab = MapBuilder(ctx, w).swap(a.position, false).swap(b.position, false).build();
        const RationalMap ba = MapBuilder(ctx, w).swap(b.position, false).swap(a.position, false).build();
        ASSERT_EQ(ab.target(), ba.target());
        const auto v = maps_equal_probabilistic(
            [&](const auto& x) { return std::make_pair(ab.apply(x), ba.apply(x)); }, dim_of(w, 3), few());
        EXPECT_TRUE(v.equal()) << text;
      }
  }
}

TEST(Maps, CompositesArePoisson) {
  const WordContext ctx(parse_cartan("A2"));
  EXPECT_TRUE(is_poisson_map(ctx, path_transform(ctx, {1, 2, 1, -1}, {-1, 2, 1, 2}, WordContext::all_moves(), false),
                             few())
                  .equal());
  const WordContext g2(parse_cartan("G2"));
  const Word w{1, 2, 1, 2, 1, 2};
  EXPECT_TRUE(is_poisson_map(g2, dmove_transform(g2, w, g2.applicable_moves(w, {MoveKind::PositiveD}).at(0)), few(3))
                  .equal());
}

// A corrupted exponent must be caught: the check is not vacuous.
TEST(Maps, PoissonCheckRejectsCorruptedMutation) {
  const WordContext ctx(parse_cartan("A2"));
  const Word w{1, 2, 1};
  const RationalMap good = dmove_transform(ctx, w, ctx.applicable_moves(w, {MoveKind::PositiveD}).at(0));
  ASSERT_TRUE(is_poisson_map(ctx, good, few()).equal());
  RationalMap bad = RationalMap::identity(good.source(), good.rank());
  bool corrupted = false;
  for (Step st : good.steps()) {
    if (auto* m = std::get_if<MutationStep>(&st.body); m && !corrupted) {
      for (std::size_t i = 0; i < m->exps.size(); ++i)
        if (i != m->k && m->exps[i] != 0 && !m->keep[i]) {
          m->exps[i] += 1;
          corrupted = true;
          break;
        }
    }
    bad.push(st);
  }
  ASSERT_TRUE(corrupted);
  const Verdict v = is_poisson_map(ctx, bad, few());
  EXPECT_EQ(v.kind, Verdict::Kind::CounterexampleAt);
  EXPECT_FALSE(v.failures.empty());
}

TEST(Maps, SaltationInverse) {
  const WordContext ctx(parse_cartan("A2"));
  for (const char* text : {"-1,1,2,1", "-2,1,2,1", "1,-1,1,2,1"}) {
    const Word w = parse_word(text);
    const std::size_t p = w.size() - 4;
    const RationalMap fwd = xi_map(ctx, w, p);
    const RationalMap back = xi_inverse_map(ctx, fwd.target(), p);
    EXPECT_EQ(back.target(), w);
    EXPECT_TRUE(is_identity(fwd.then(back), few(6)).equal()) << text;
  }
}

TEST(Maps, ArtinGeneratorIsIndependentOfPivot) {
  const WordContext ctx(parse_cartan("A1"));
  for (const char* text : {"1,1", "-1,1"}) {
    const State s = state_in_top_class(ctx, parse_word(text));
    const auto choices = artin_choices(ctx, s, 1);
    ASSERT_FALSE(choices.empty()) << text;
    const RationalMap ref = artin_T_map(ctx, s, 1, 0);
    for (std::size_t c = 1; c < choices.size(); ++c) {
      const RationalMap m = artin_T_map(ctx, s, 1, c);
      const auto v = maps_equal_probabilistic(
          [&](const auto& x) { return std::make_pair(ref.apply(x), m.apply(x)); }, dim_of(s.word, 1), few());
      EXPECT_TRUE(v.equal()) << text << " choice " << c;
    }
  }
  const WordContext a2(parse_cartan("A2"));
  const State s = state_in_top_class(a2, {1, 2, 1, 1, 2, 1});
  const auto choices = artin_choices(a2, s, 2);
  ASSERT_GE(choices.size(), 2u);
  const RationalMap ref = artin_T_map(a2, s, 2, 0), alt = artin_T_map(a2, s, 2, choices.size() - 1);
  EXPECT_TRUE(maps_equal_probabilistic([&](const auto& x) { return std::make_pair(ref.apply(x), alt.apply(x)); },
                                       dim_of(s.word, 2), few(3))
                  .equal());
}

TEST(Maps, ArtinGeneratorA1Values) {
  const WordContext ctx(parse_cartan("A1"));
  const RationalMap T = artin_T_map(ctx, state_in_top_class(ctx, {1, 1}), 1);
  const auto y = T.apply(std::vector<Rational>{Rational(2), Rational(3), Rational(5)});
  EXPECT_EQ(y, (std::vector<Rational>{Rational(9, 64), Rational(5, 3), Rational(5)}));
}

TEST(Maps, JsonIsDeterministic) {
  const WordContext ctx(parse_cartan("A2"));
  const auto a = path_transform(ctx, {1, 2, 1, -2}, {-2, 2, 1, 2}, WordContext::all_moves(), false).to_json();
  const auto b = path_transform(ctx, {1, 2, 1, -2}, {-2, 2, 1, 2}, WordContext::all_moves(), false).to_json();
  EXPECT_EQ(a.dump(), b.dump());
  EXPECT_FALSE(a.dump().empty());
}

TEST(Maps, RejectsMismatchedPoints) {
  const RationalMap id = RationalMap::identity({1, 2}, 2);
  EXPECT_THROW(id.apply(std::vector<Rational>(3, Rational(1))), std::invalid_argument);
  EXPECT_THROW(id.apply(TorusPoint<Rational>{{2, 1}, 2, std::vector<Rational>(4, Rational(1))}), std::invalid_argument);
}
