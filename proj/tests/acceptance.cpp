// Acceptance run: one PASS/FAIL line per criterion, with runtime against a pinned budget.
//
// Two extra "literal" probes compare against matrices as printed in the reference example
// where the printed form contradicts the rest of the construction (a determinant and a power
// of t). They are expected to fail, are flagged known_contradiction below, and do not affect the
// exit code. Every other line does.

#include "cdual/checks.hpp"
#include "cdual/evals.hpp"
#include "cdual/pgl2.hpp"

#include "support.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>

using namespace cdual;
using State = WordContext::State;

namespace {

// ---- pinned tolerances and budgets

constexpr std::size_t kGoldenPoints = 20;     // exact rational points per displayed matrix
constexpr std::size_t kBracketPoints = 20;    // per prime, two primes
constexpr std::size_t kMapTrials = 50;        // probabilistic map equality
constexpr std::size_t kDckpPoints = 20;
constexpr std::size_t kSuiteTrials = 20;      // per instance in the identity suite
constexpr std::size_t kPropertyInstances = 100;
constexpr std::uint64_t kRngSeed = 20240611;
// Exact equality everywhere: no floating point is involved, so the tolerance is zero.

struct Outcome {
  bool pass = true;
  std::string detail;
  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
  void expect(bool ok, const std::string& why) {
    if (!ok) fail(why);
  }
};

struct Line {
  std::string id, title;
  double budget_s;
  std::function<void(Outcome&)> body;
  bool known_contradiction = false;
};

TrialConfig trials(std::size_t n, std::uint64_t prime = (1ULL << 61) - 1) {
  TrialConfig c;
  c.trials = n;
  c.rng_seed = kRngSeed;
  c.prime = prime;
  return c;
}

std::string verdict_text(const Verdict& v) {
  std::ostringstream os;
  os << v.kind_name() << " after " << v.trials << " trials";
  if (!v.failures.empty()) {
    os << "; first at (";
    for (std::size_t i = 0; i < v.failures[0].point.size(); ++i) os << (i ? "," : "") << v.failures[0].point[i];
    os << ")";
  }
  if (!v.note.empty()) os << "; " << v.note;
  return os.str();
}

State top_class(const WordContext& ctx, const Word& w, const WeylElement& w1) {
  if (!ctx.classes(w).count({ctx.w0(), w1})) throw std::logic_error("class mismatch for " + format_word(w));
  return State{w, w1};
}

// ---- criterion 1

using IntRows = std::vector<std::vector<int>>;

void eta_matrices(Outcome& o) {
  const CartanData c = parse_cartan("A1");
  const IntRows plain_first{{0, -1, 0}, {1, 0, 0}, {0, 0, 0}};
  const IntRows barred_first{{0, 1, 0}, {-1, 0, 0}, {0, 0, 0}};
  const std::vector<std::pair<Word, IntRows>> want{
      {{1, 1}, plain_first}, {{1, -1}, plain_first}, {{-1, 1}, barred_first}, {{-1, -1}, barred_first}};
  for (const auto& [w, rows] : want) {
    const Seed s = bracket_seed(seed_for_word(c, w));
    o.expect(s.size() == 3, "wrong seed size for " + format_word(w));
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j)
        o.expect(s.e(i, j) == Rational(rows[i][j]), "eta(" + format_word(w) + ") differs at " + std::to_string(i) +
                                                        "," + std::to_string(j));
  }
}

// ---- criterion 2

struct GoldenCase {
  std::string label;
  Word word;
  bool v_top;
  bool w1_top;
  // closed form in (coordinates..., s); the word torus takes t = s^2 as its last coordinate
  std::function<Matrix<Rational>(const std::vector<Rational>&)> form;
};

void golden_matrices(Outcome& o, const std::vector<GoldenCase>& cases) {
  const WordContext ctx(parse_cartan("A1"));
  const WeylElement e = WeylElement::identity(ctx.cartan()), s1 = ctx.w0();
  std::mt19937_64 g(kRngSeed);
  std::uniform_int_distribution<long long> num(-30, 30), den(1, 12);
  for (const GoldenCase& gc : cases) {
    const EvHatPlan plan = make_ev_hat_plan(ctx, gc.word, gc.v_top ? s1 : e, gc.w1_top ? s1 : e);
    const std::size_t dim = Layout::of(gc.word, 1).size();
    std::size_t done = 0, draws = 0;
    while (done < kGoldenPoints && draws < 20 * kGoldenPoints) {
      ++draws;
      std::vector<Rational> pt;
      for (std::size_t i = 0; i < dim; ++i) {
        long long n = 0;
        while (n == 0) n = num(g);
        pt.emplace_back(n, den(g));
      }
      try {
        const Rational s = pt.back();
        std::vector<Rational> x = pt;
        x.back() = s * s;
        const auto got = ev_hat(plan, x);
        const auto want = gc.form(pt);
        if (!projective_eq(got, want)) {
          std::ostringstream os;
          os << gc.label << " differs at (";
          for (std::size_t i = 0; i < pt.size(); ++i) os << (i ? "," : "") << pt[i];
          os << ")";
          o.fail(os.str());
          return;
        }
        ++done;
      } catch (const std::domain_error&) {
        // zero coordinate or a point outside the big cell: draw again
      }
    }
    o.expect(done == kGoldenPoints, gc.label + ": too many singular draws");
  }
}

std::vector<GoldenCase> attainable_golden_cases() {
  using V = std::vector<Rational>;
  return {
      {"ev_hat 1", {1}, false, false, [](const V& p) { return pgl2::ev_hat_1(p[0], p[1]); }},
      {"ev_hat -1,1", {-1, 1}, true, true, [](const V& p) { return pgl2::ev_hat_bar1_1(p[0], p[1], p[2]); }},
      {"ev_hat -1,-1", {-1, -1}, true, true, [](const V& p) { return pgl2::ev_hat_bar1_1(p[0], p[1], p[2]); }},
      {"ev_hat 1,1", {1, 1}, true, false, [](const V& p) { return pgl2::ev_hat_1_1(p[0], p[1], p[2]); }},
      {"ev_hat 1,-1 (class of 1,1)", {1, -1}, true, false,
       [](const V& p) { return pgl2::ev_hat_1_1(p[0], p[1], p[2]); }},
      {"ev_hat 1,-1 (class of -1,1), determinant-one form", {1, -1}, true, true,
       [](const V& p) { return pgl2::ev_hat_1_bar1(p[0], p[1], p[2]); }},
  };
}

void golden_literal(Outcome& o) {
  using V = std::vector<Rational>;
  golden_matrices(o, {{"ev_hat 1,-1 (class of -1,1), printed bottom-right entry -y1~^-1 s", {1, -1}, true, true,
                       [](const V& p) { return pgl2::ev_hat_1_bar1_displayed(p[0], p[1], p[2]); }}});
}

// ---- criteria 3, 6, 7, 9: through the identity suite

CheckReport run_check(Outcome& o, const std::string& name, const std::string& type, std::size_t n,
                      std::vector<Word> words = {}, std::optional<CheckLevel> level = std::nullopt) {
  CheckOptions opt;
  opt.cartan_type = type;
  opt.trials = trials(n);
  opt.words = std::move(words);
  opt.level = level;
  CheckReport r = check_identity(name, opt);
  if (!r.passed()) {
    std::string why = name + " on " + type + " failed";
    if (!r.failures.empty()) why += ": " + r.failures[0].label;
    if (r.inconclusive) why += " (inconclusive)";
    o.fail(why);
  }
  return r;
}

void bracket_table(Outcome& o) {
  const CheckReport r = run_check(o, "PGL2_TABLE", "A1", kBracketPoints);
  std::set<std::string> primes;
  for (const auto& i : r.instances) primes.insert(i.label.substr(i.label.rfind(' ') + 1));
  o.expect(primes.size() >= 2, "bracket table ran over fewer than two primes");
  for (const auto& p : primes) o.expect(std::stoull(p) >= (1ULL << 31), "prime below 2^31: " + p);
  for (const auto& i : r.instances) o.expect(i.trials >= kBracketPoints, "too few points in " + i.label);
  run_check(o, "EVHAT_POISSON", "A1", kBracketPoints);
}

// ---- criterion 4

template <class F, class G>
void map_equal(Outcome& o, const std::string& label, std::size_t dim, const F& f, const G& gfun) {
  const Verdict v = maps_equal_probabilistic(f, gfun, dim, trials(kMapTrials));
  if (!v.equal()) o.fail(label + ": " + verdict_text(v));
}

template <class T, std::size_t N>
std::vector<T> vec(const std::array<T, N>& a) {
  return std::vector<T>(a.begin(), a.end());
}

void closed_forms(Outcome& o) {
  const WordContext ctx(parse_cartan("A1"));
  const WeylElement e = WeylElement::identity(ctx.cartan());
  const RationalMap xi = xi_map(ctx, {-1, 1}, 0);
  const RationalMap T = artin_T_map(ctx, top_class(ctx, {1, 1}, e), 1);
  const RationalMap T2 = T.then(T);
  map_equal(o, "Xi_s1", 3, [&](const auto& x) { return xi.apply(x); },
            [](const auto& x) { return vec(pgl2::xi_s1(x[0], x[1], x[2])); });
  map_equal(o, "calT_1 on 1,1", 3, [&](const auto& x) { return T.apply(x); },
            [](const auto& x) { return vec(pgl2::artin_T1(x[0], x[1], x[2])); });
  map_equal(o, "calT_1 squared", 3, [&](const auto& x) { return T2.apply(x); },
            [](const auto& x) { return vec(pgl2::artin_T1_squared_composed(x[0], x[1], x[2])); });
  // The square acts nontrivially: it moves z0 whenever t != z1^2.
  const Verdict id = maps_equal_probabilistic([&](const auto& x) { return T2.apply(x); },
                                              [](const auto& x) { return x; }, 3, trials(kMapTrials));
  o.expect(id.kind == Verdict::Kind::CounterexampleAt, "calT_1 squared acts trivially");
  const std::vector<Rational> p{Rational(2), Rational(3), Rational(5)};
  o.expect(T2.apply(p) == std::vector<Rational>{Rational(10, 9), Rational(3), Rational(5)},
           "calT_1 squared at (2,3,5) is not (10/9,3,5)");
}

void square_literal(Outcome& o) {
  const WordContext ctx(parse_cartan("A1"));
  const RationalMap T = artin_T_map(ctx, top_class(ctx, {1, 1}, WeylElement::identity(ctx.cartan())), 1);
  const RationalMap T2 = T.then(T);
  map_equal(o, "calT_1 squared against (z0 z1^-2 t^2, z1, t)", 3, [&](const auto& x) { return T2.apply(x); },
            [](const auto& x) { return vec(pgl2::artin_T1_squared_displayed(x[0], x[1], x[2])); });
}

// ---- criterion 5

void braid_relation(Outcome& o) {
  const WordContext ctx(parse_cartan("A2"));
  const Word w{1, 2, 1, 1, 2, 1};
  const State s = top_class(ctx, w, WeylElement::identity(ctx.cartan()));
  const RationalMap T1 = artin_T_map(ctx, s, 1), T2 = artin_T_map(ctx, s, 2);
  const RationalMap lhs = T1.then(T2).then(T1), rhs = T2.then(T1).then(T2);
  const Verdict v = maps_equal_probabilistic([&](const auto& x) { return lhs.apply(x); },
                                             [&](const auto& x) { return rhs.apply(x); }, Layout::of(w, 2).size(),
                                             trials(kMapTrials));
  if (!v.equal()) o.fail("T1 T2 T1 vs T2 T1 T2: " + verdict_text(v));
  o.expect(v.failures.empty() && v.trials == kMapTrials, "fewer than the pinned number of comparisons");
}

// ---- criterion 6

void dckp(Outcome& o) {
  run_check(o, "DCKP_CLUSTER", "A1", kDckpPoints);
  run_check(o, "DCKP_CLUSTER", "A2", kDckpPoints, {parse_word("1,2,1,1,2,1")});
}

// ---- criterion 7

void fg_mutation(Outcome& o) {
  for (const auto& [a, b] : std::vector<std::pair<const char*, const char*>>{
           {"1,2,1", "2,1,2"}, {"1,-2", "-2,1"}, {"-1,1,2", "1,-1,2"}}) {
    const CheckReport r = run_check(o, "FG_MUTATION", "A2", kMapTrials, {parse_word(a), parse_word(b)});
    o.expect(r.trials >= kMapTrials, std::string("too few points for ") + a);
  }
}

// ---- criterion 8

void dmove_shadows(Outcome& o) {
  std::size_t count = 0;
  for (const char* t : {"B2", "G2"}) {
    const WordContext ctx(parse_cartan(t));
    const int m = ctx.cartan().move_order(1, 2);
    for (int sgn : {1, -1})
      for (int first : {1, 2}) {
        Word block;
        for (int i = 0; i < m; ++i) block.push_back(sgn * (i % 2 == 0 ? first : 3 - first));
        // The bare block, and the block with one neighbouring letter of either sign on either side.
        std::vector<std::pair<Word, std::size_t>> words{{block, 0}};
        for (int extra : {1, 2, -1, -2}) {
          Word left{extra}, right = block;
          left.insert(left.end(), block.begin(), block.end());
          right.push_back(extra);
          words.emplace_back(left, 1);
          words.emplace_back(right, 0);
        }
        for (const auto& [w, q] : words) {
          const DMovePlan plan = dmove_plan(ctx, w, q);
          const Seed got = dmove_seed_shadow(ctx, w, q);
          o.expect(got.same_matrix(seed_for_word(ctx.cartan(), plan.target)),
                   std::string(t) + ": shadow of " + format_word(w) + " differs from the seed of " +
                       format_word(plan.target));
          o.expect(plan.sequence.size() == (m == 4 ? 3u : 10u),
                   std::string(t) + ": unexpected sequence length for " + format_word(w));
          ++count;
        }
      }
  }
  o.expect(count == 72, "wrong number of shadow instances");
}

// ---- criterion 9

void suite(Outcome& o) {
  std::set<std::string> passed;
  for (const char* t : {"A1", "A2", "B2", "G2"}) {
    CheckOptions opt;
    opt.cartan_type = t;
    opt.trials = trials(kSuiteTrials);
    const SuiteResult r = check_all(opt);
    for (const auto& rep : r.reports) {
      if (rep.passed())
        passed.insert(rep.name);
      else
        o.fail(rep.name + " on " + t + " failed");
    }
  }
  o.expect(passed.size() == identity_names().size(),
           "only " + std::to_string(passed.size()) + " of " + std::to_string(identity_names().size()) +
               " identities ran somewhere");
}

// ---- criterion 10

template <class Fn>
void property(Outcome& o, const std::string& name, const Fn& instance) {
  std::size_t ok = 0;
  for (std::size_t i = 0; i < kPropertyInstances; ++i)
    if (instance(i)) ++ok;
  o.expect(ok == kPropertyInstances, name + ": " + std::to_string(kPropertyInstances - ok) + " failures");
}

// Evaluates at a random F_p point; a singular draw is retried.
template <class Fn>
bool at_random_point(std::mt19937_64& g, std::size_t dim, const Fn& check) {
  for (int attempt = 0; attempt < 8; ++attempt) {
    try {
      return check(fixtures::random_fp_point(g, dim));
    } catch (const std::domain_error&) {
    }
  }
  return false;
}

void invariants(Outcome& o) {
  std::mt19937_64 g(kRngSeed);
  const std::vector<CartanData> types{parse_cartan("A2"), parse_cartan("B2"), parse_cartan("G2")};
  auto pick_type = [&](std::size_t i) -> const CartanData& { return types[i % types.size()]; };
  auto direction = [&](const Seed& s, bool frozen) -> std::optional<std::size_t> {
    std::vector<std::size_t> ks;
    for (std::size_t k = 0; k < s.size(); ++k)
      if (s.frozen[k] == frozen && (!frozen || s.cover_left[k] != s.cover_right[k])) ks.push_back(k);
    if (ks.empty()) return std::nullopt;
    return ks[g() % ks.size()];
  };

  property(o, "mutation involutive", [&](std::size_t i) {
    const CartanData& c = pick_type(i);
    for (;;) {
      const Seed s = seed_for_word(c, fixtures::random_word(g, 2, 2, 6));
      const auto k = direction(s, false);
      if (!k) continue;
      if (!mutate_seed(mutate_seed(s, *k), *k).same_matrix(s)) return false;
      const RationalMap m = mutation_map(s, *k).then(mutation_map(mutate_seed(s, *k), *k));
      return at_random_point(g, s.size(), [&](const auto& x) { return m.apply(x) == x; });
    }
  });
  property(o, "tropical mutation involutive", [&](std::size_t i) {
    const CartanData& c = pick_type(i);
    for (;;) {
      const Seed s = seed_for_word(c, fixtures::random_word(g, 2, 1, 6));
      const auto k = direction(s, true);
      if (!k) continue;
      Seed t = tropical_mutate_seed(s, *k);
      if (!tropical_mutate_seed(t, *k).same_matrix(s)) return false;
      const RationalMap first = tropical_map(s, *k);
      t.word = first.target();  // the seed label follows the tau-move
      const RationalMap m = first.then(tropical_map(t, *k));
      return at_random_point(g, s.size(), [&](const auto& x) { return m.apply(x) == x; });
    }
  });
  property(o, "amalgamation associative", [&](std::size_t i) {
    const CartanData& c = pick_type(i);
    const Word a = fixtures::random_word(g, 2, 0, 3), b = fixtures::random_word(g, 2, 0, 3),
               d = fixtures::random_word(g, 2, 0, 3);
    const Seed sa = seed_for_word(c, a), sb = seed_for_word(c, b), sd = seed_for_word(c, d);
    if (!amalgamate(amalgamate(sa, sb), sd).same_matrix(amalgamate(sa, amalgamate(sb, sd)))) return false;
    Word ab = a, bd = b;
    ab.insert(ab.end(), b.begin(), b.end());
    bd.insert(bd.end(), d.begin(), d.end());
    const auto x1 = fixtures::random_fp_point(g, sa.size()), x2 = fixtures::random_fp_point(g, sb.size()),
               x3 = fixtures::random_fp_point(g, sd.size());
    return amalgamate_points(ab, d, 2, amalgamate_points(a, b, 2, x1, x2), x3) ==
           amalgamate_points(a, bd, 2, x1, amalgamate_points(b, d, 2, x2, x3));
  });
  property(o, "split round trip", [&](std::size_t) {
    const Word a = fixtures::random_word(g, 2, 0, 4), b = fixtures::random_word(g, 2, 0, 4);
    Word ab = a;
    ab.insert(ab.end(), b.begin(), b.end());
    const auto x = fixtures::random_fp_point(g, Layout::of(ab, 2).size());
    const auto [x1, x2] = split_point(a, b, 2, x);
    return amalgamate_points(a, b, 2, x1, x2) == x;
  });

  // Dual moves: a random prefix, a letter, then a random reduced word of w0.
  std::vector<WordContext> ctxs;
  for (const char* t : {"A1", "A2", "A3", "B2", "G2"}) ctxs.emplace_back(parse_cartan(t));
  std::vector<std::vector<Word>> w0_words;
  for (const auto& ctx : ctxs) {
    const auto rw = reduced_words(ctx.cartan(), ctx.w0());
    w0_words.emplace_back(rw.begin(), rw.end());
  }
  auto dual_instance = [&](std::size_t ci, std::size_t max_prefix) {
    const WordContext& ctx = ctxs[ci];
    const int r = ctx.cartan().rank;
    Word w = fixtures::random_word(g, r, 0, max_prefix);
    const int k = 1 + static_cast<int>(g() % r);
    w.push_back(-k);
    const auto& ws = w0_words[ci];
    const Word& b = ws[g() % ws.size()];
    w.insert(w.end(), b.begin(), b.end());
    return std::make_pair(w, w.size() - b.size() - 1);
  };
  property(o, "dual move involutive on words", [&](std::size_t i) {
    const std::size_t ci = i % ctxs.size();
    const auto [w, q] = dual_instance(ci, 3);
    const Word d = ctxs[ci].apply_move(w, MoveKind::Dual, q);
    return ctxs[ci].apply_move(d, MoveKind::Dual, q) == w;
  });
  property(o, "saltation inverse after saltation", [&](std::size_t i) {
    const std::size_t ci = i % 2;  // A1 and A2 keep this within budget
    const auto [w, q] = dual_instance(ci, 2);
    const RationalMap fwd = xi_map(ctxs[ci], w, q);
    const RationalMap m = fwd.then(xi_inverse_map(ctxs[ci], fwd.target(), q));
    return at_random_point(g, Layout::of(w, ctxs[ci].cartan().rank).size(),
                           [&](const auto& x) { return m.apply(x) == x; });
  });
  property(o, "star involutive", [&](std::size_t i) {
    const WordContext& ctx = ctxs[i % ctxs.size()];
    const CartanData& c = ctx.cartan();
    const Word w = fixtures::random_word(g, c.rank, 0, 6);
    if (ctx.star_word(ctx.star_word(w)) != w) return false;
    Word plain = fixtures::random_word(g, c.rank, 0, 6);
    for (int& l : plain) l = letter_index(l);
    const WeylElement u = WeylElement::from_word(c, plain);
    if (!(star(c, star(c, u)) == u)) return false;
    const auto x = fixtures::random_fp_point(g, Layout::of(w, c.rank).size());
    const auto y = star_transport(ctx, w, x);
    const auto z = star_transport(ctx, y.word, y.values);
    return z.word == w && z.values == x;
  });
}

}  // namespace

int main() {
  const std::vector<Line> lines{
      {"1", "eta matrices of the rank-one words of length two", 1.0, eta_matrices},
      {"2", "twisted evaluations match the rank-one closed forms", 5.0,
       [](Outcome& o) { golden_matrices(o, attainable_golden_cases()); }},
      {"2-literal", "ev_hat 1,-1 against the printed matrix (known contradiction)", 5.0, golden_literal, true},
      {"3", "bracket table on the rank-one twisted evaluations, two primes", 10.0, bracket_table},
      {"4", "saltation and Artin generator closed forms, nontrivial square", 5.0, closed_forms},
      {"4-literal", "calT_1 squared against the printed t^2 form (known contradiction)", 5.0, square_literal, true},
      {"5", "braid relation T1 T2 T1 = T2 T1 T2 on A2", 60.0, braid_relation},
      {"6", "DCKP automorphism transported by calT_j", 60.0, dckp},
      {"7", "evaluation is invariant under the mutation of each move", 10.0, fg_mutation},
      {"8", "d-move shadows for B2 and G2", 5.0, dmove_shadows},
      {"9", "identity suite: A1, A2 matrix level; B2, G2 seed level", 180.0, suite},
      {"10", "structural invariants, 100 instances each", 30.0, invariants},
  };
  int hard_failures = 0, known = 0;
  for (const Line& l : lines) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      l.body(o);
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (o.pass && secs > l.budget_s) o.fail("over the runtime budget");
    std::printf("[%s] %-10s %-64s %7.2fs / %.0fs%s%s\n", o.pass ? "PASS" : "FAIL", l.id.c_str(), l.title.c_str(), secs,
                l.budget_s, o.detail.empty() ? "" : "  -- ", o.detail.c_str());
    if (!o.pass) (l.known_contradiction ? known : hard_failures)++;
  }
  std::printf("%d criterion failure(s); %d known contradiction(s) with printed forms\n", hard_failures, known);
  return hard_failures == 0 ? 0 : 1;
}
