#include "cdual/maps.hpp"

#include <algorithm>

namespace cdual {

std::string step_kind_name(const Step& s) {
  return std::visit(
      [&](const auto& b) -> std::string {
        using B = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<B, MutationStep>) return "mutation";
        if constexpr (std::is_same_v<B, TropicalStep>) return "tropical_mutation";
        if constexpr (std::is_same_v<B, RelabelStep>) return b.from.empty() ? "identity" : "relabel";
        if constexpr (std::is_same_v<B, EmbeddedStep>) return "split_amalgamate";
        if constexpr (std::is_same_v<B, XiCoreStep>) return b.inverse ? "saltation_core_inverse" : "saltation_core";
        return "unknown";
      },
      s.body);
}

void RationalMap::push(Step s) {
  if (s.source != target_)
    throw std::logic_error("step starts at '" + format_word(s.source) + "' but the map ends at '" +
                           format_word(target_) + "'");
  target_ = s.target;
  steps_.push_back(std::move(s));
}

RationalMap RationalMap::then(const RationalMap& next) const {
  if (next.source_ != target_) throw std::logic_error("composing maps whose words do not chain");
  RationalMap out = *this;
  for (const Step& s : next.steps_) out.push(s);
  out.target_ = next.target_;
  return out;
}

Step invert_step(const Step& s) {
  Step r;
  r.source = s.target;
  r.target = s.source;
  r.index = s.index;
  r.body = std::visit(
      [&](const auto& b) -> decltype(Step::body) {
        using B = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<B, MutationStep>) {
          MutationStep m = b;
          for (auto& e : m.exps) e = -e;
          return m;
        } else if constexpr (std::is_same_v<B, TropicalStep>) {
          return b;  // involutive
        } else if constexpr (std::is_same_v<B, RelabelStep>) {
          if (b.from.empty()) return b;
          RelabelStep inv_perm{std::vector<std::size_t>(b.from.size())};
          for (std::size_t t = 0; t < b.from.size(); ++t) inv_perm.from[b.from[t]] = t;
          return inv_perm;
        } else if constexpr (std::is_same_v<B, EmbeddedStep>) {
          return EmbeddedStep{b.prefix, std::make_shared<const RationalMap>(b.inner->inverse())};
        } else {
          XiCoreStep x = b;
          x.inverse = !b.inverse;
          return x;
        }
      },
      s.body);
  return r;
}

RationalMap RationalMap::inverse() const {
  RationalMap out(target_, target_, rank_);
  for (auto it = steps_.rbegin(); it != steps_.rend(); ++it) out.push(invert_step(*it));
  return out;
}

nlohmann::json RationalMap::to_json() const {
  nlohmann::json steps = nlohmann::json::array();
  for (const Step& s : steps_) {
    nlohmann::json j;
    j["step_kind"] = step_kind_name(s);
    j["index"] = s.index ? nlohmann::json::array({s.index->letter, s.index->k}) : nlohmann::json();
    j["source_word"] = format_word(s.source);
    j["target_word"] = format_word(s.target);
    if (const auto* e = std::get_if<EmbeddedStep>(&s.body)) {
      j["prefix"] = format_word(e->prefix);
      j["inner"] = e->inner->to_json();
    }
    steps.push_back(j);
  }
  return steps;
}

// ---- primitive maps

namespace {

Step mutation_step(const Seed& s, std::size_t k, bool restricted) {
  if (k >= s.size()) throw std::out_of_range("mutation direction out of range");
  if (s.frozen[k]) throw FrozenDirection("mutation in a frozen direction");
  MutationStep m;
  m.k = k;
  m.exps.assign(s.size(), 0);
  m.keep = restricted ? s.cover_right : std::vector<bool>(s.size(), false);
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i == k) continue;
    if (!s.eps[i][k].is_integer()) throw FrozenStructureViolation("non-integral exponent next to an unfrozen vertex");
    m.exps[i] = s.eps[i][k].to_ll();
  }
  return Step{s.word, s.word, m, s.layout.vertex(k)};
}

Step tropical_step(const Seed& s, std::size_t k, Side side, const Word& target) {
  return Step{s.word, target, TropicalStep{k, tropical_exponents(s, k, side)}, s.layout.vertex(k)};
}

Word flip(Word w, std::size_t q) {
  w[q] = -w[q];
  return w;
}

}  // namespace

RationalMap mutation_map(const Seed& s, std::size_t k, bool restricted) {
  RationalMap m = RationalMap::identity(s.word, s.layout.rank);
  m.push(mutation_step(s, k, restricted));
  return m;
}

RationalMap tropical_map(const Seed& s, std::size_t k, std::optional<Side> side) {
  const Side sd = cover_side(s, k, side);
  Word target = s.word;
  if (!s.word.empty()) {
    const SeedIndex v = s.layout.vertex(k);
    if (sd == Side::Right && letter_index(s.word.back()) == v.letter && v.k == s.layout.counts[v.letter])
      target = flip(target, target.size() - 1);
    else if (sd == Side::Left && letter_index(s.word.front()) == v.letter && v.k == 0)
      target = flip(target, 0);
  }
  RationalMap m = RationalMap::identity(s.word, s.layout.rank);
  m.push(tropical_step(s, k, sd, target));
  return m;
}

// ---- builder

MapBuilder::MapBuilder(const WordContext& ctx, Word start)
    : ctx_(ctx),
      word_(start),
      seed_(seed_for_word(ctx.cartan(), start)),
      map_(RationalMap::identity(start, ctx.cartan().rank)) {}

void MapBuilder::reset_seed() { seed_ = seed_for_word(ctx_.cartan(), word_); }

void MapBuilder::relabel_to(const Word& w, std::vector<std::size_t> from) {
  map_.push(Step{word_, w, RelabelStep{std::move(from)}, std::nullopt});
  word_ = w;
  reset_seed();
}

MapBuilder& MapBuilder::mutate(SeedIndex k, bool restricted) {
  const std::size_t pos = seed_.layout.index(k);
  map_.push(mutation_step(seed_, pos, restricted));
  seed_ = mutate_seed(seed_, pos);
  return *this;
}

MapBuilder& MapBuilder::swap(std::size_t q, bool restricted) {
  const Word nw = ctx_.apply_move(word_, MoveKind::Mixed2, q);
  if (letter_index(word_[q]) == letter_index(word_[q + 1])) {
    const int i = letter_index(word_[q]);
    mutate({i, count_letter(word_, i, q) + 1}, restricted);
  }
  relabel_to(nw, {});
  return *this;
}

DMovePlan dmove_plan(const WordContext& ctx, const Word& w, std::size_t q) {
  if (q + 1 >= w.size()) throw InapplicableMove("d-move position out of range");
  const MoveKind kind = is_plain(w[q]) ? MoveKind::PositiveD : MoveKind::NegativeD;
  DMovePlan plan;
  plan.target = ctx.apply_move(w, kind, q);
  const int i = letter_index(w[q]), j = letter_index(w[q + 1]);
  const int ci = count_letter(w, i, q), cj = count_letter(w, j, q);
  const int m = ctx.cartan().move_order(i, j);
  auto I = [&](int k) { return SeedIndex{i, ci + k}; };
  auto J = [&](int k) { return SeedIndex{j, cj + k}; };
  switch (m) {
    case 2:
      break;
    case 3: {
      plan.sequence = {I(1)};
      // (i,ci+1) becomes (j,cj+1); later i-vertices shift down, later j-vertices shift up.
      const Layout ls = Layout::of(w, ctx.cartan().rank), lt = Layout::of(plan.target, ctx.cartan().rank);
      plan.relabel.assign(lt.size(), 0);
      for (std::size_t p = 0; p < ls.size(); ++p) {
        SeedIndex v = ls.vertex(p);
        if (v == I(1))
          v = J(1);
        else if (v.letter == i && v.k > ci + 1)
          --v.k;
        else if (v.letter == j && v.k > cj)
          ++v.k;
        plan.relabel[lt.index(v)] = p;
      }
      break;
    }
    case 4:
      plan.sequence = {I(1), J(1), I(1)};
      break;
    case 6: {
      // Ten mutations, listed leftmost-last.
      const std::vector<SeedIndex> seq{J(2), I(1), J(1), J(2), I(2), J(2), I(1), I(2), J(1), J(2)};
      plan.sequence.assign(seq.rbegin(), seq.rend());
      break;
    }
    default:
      throw InapplicableMove("unsupported braid order " + std::to_string(m));
  }
  return plan;
}

Seed dmove_seed_shadow(const WordContext& ctx, const Word& w, std::size_t q) {
  const DMovePlan plan = dmove_plan(ctx, w, q);
  Seed s = seed_for_word(ctx.cartan(), w);
  for (const SeedIndex& k : plan.sequence) s = mutate_seed(s, s.layout.index(k));
  const Seed target = seed_for_word(ctx.cartan(), plan.target);
  if (plan.relabel.empty()) {
    s.word = plan.target;
    s.layout = target.layout;
    return s;
  }
  Seed r = target;
  for (std::size_t a = 0; a < r.size(); ++a)
    for (std::size_t b = 0; b < r.size(); ++b) r.eps[a][b] = s.eps[plan.relabel[a]][plan.relabel[b]];
  for (std::size_t a = 0; a < r.size(); ++a) r.d[a] = s.d[plan.relabel[a]];
  return r;
}

MapBuilder& MapBuilder::dmove(std::size_t q, bool restricted) {
  DMovePlan plan = dmove_plan(ctx_, word_, q);
  for (const SeedIndex& k : plan.sequence) mutate(k, restricted);
  relabel_to(plan.target, std::move(plan.relabel));
  return *this;
}

MapBuilder& MapBuilder::tau_right() {
  if (word_.empty()) throw InapplicableMove("right tau-move on the empty word");
  const std::size_t k = seed_.layout.right_frozen(letter_index(word_.back()));
  const Word nw = flip(word_, word_.size() - 1);
  map_.push(tropical_step(seed_, k, Side::Right, nw));
  word_ = nw;
  reset_seed();
  return *this;
}

MapBuilder& MapBuilder::tau_left() {
  if (word_.empty()) throw InapplicableMove("left tau-move on the empty word");
  const std::size_t k = seed_.layout.left_frozen(letter_index(word_.front()));
  const Word nw = flip(word_, 0);
  map_.push(tropical_step(seed_, k, Side::Left, nw));
  word_ = nw;
  reset_seed();
  return *this;
}

MapBuilder& MapBuilder::tau_right_identity() {
  if (word_.empty()) throw InapplicableMove("right tau-move on the empty word");
  relabel_to(flip(word_, word_.size() - 1), {});
  return *this;
}

MapBuilder& MapBuilder::move_letter(std::size_t from, std::size_t to, bool restricted) {
  for (; from < to; ++from) swap(from, restricted);
  for (; from > to; --from) swap(from - 1, restricted);
  return *this;
}

MapBuilder& MapBuilder::xi(std::size_t p) {
  const Word target = ctx_.apply_move(word_, MoveKind::Dual, p);  // validates the shape
  const int rank = ctx_.cartan().rank;
  const Word X(word_.begin(), word_.begin() + p), R(word_.begin() + p, word_.end());
  const int k = -R[0];
  const Word P(R.begin() + 1, R.end());
  const int ks = ctx_.star_letter(k);

  MapBuilder inner(ctx_, R);
  inner.move_letter(0, P.size(), true);
  Word core_source = P, core_target = square_word(P);
  core_source.push_back(-k);
  core_target.push_back(ks);
  XiCoreStep core{P, k, ks, nullptr, nullptr, false};
  const RationalMap z = zeta_map(ctx_, P, false);
  core.zeta = std::make_shared<const RationalMap>(z);
  core.zeta_inverse = std::make_shared<const RationalMap>(z.inverse());
  inner.map_.push(Step{core_source, core_target, core, std::nullopt});
  inner.word_ = core_target;
  inner.reset_seed();
  inner.move_letter(core_target.size() - 1, 0, true);

  if (X.empty()) {
    map_ = map_.then(inner.build());
  } else {
    map_.push(Step{word_, target, EmbeddedStep{X, std::make_shared<const RationalMap>(inner.build())}, std::nullopt});
  }
  (void)rank;
  word_ = target;
  reset_seed();
  return *this;
}

MapBuilder& MapBuilder::xi_inverse(std::size_t p) {
  const Word target = ctx_.apply_move(word_, MoveKind::Dual, p);
  if (!is_plain(word_.at(p))) throw InapplicableMove("inverse saltation needs a plain letter before a barred block");
  // The forward saltation runs from `target` back to the current word.
  const RationalMap fwd = xi_map(ctx_, target, p);
  if (fwd.target() != word_) throw std::logic_error("saltation does not invert the dual move");
  return append(fwd.inverse());
}

MapBuilder& MapBuilder::append(const RationalMap& m) {
  map_ = map_.then(m);
  word_ = m.target();
  reset_seed();
  return *this;
}

RationalMap dmove_transform(const WordContext& ctx, const Word& w, const Move& move, bool restricted) {
  if (move.before != w) throw InapplicableMove("move was computed for a different word");
  MapBuilder b(ctx, w);
  switch (move.kind) {
    case MoveKind::Mixed2: b.swap(move.position, restricted); break;
    case MoveKind::PositiveD:
    case MoveKind::NegativeD: b.dmove(move.position, restricted); break;
    case MoveKind::TauLeft: b.tau_left(); break;
    case MoveKind::TauRight:
      if (restricted)
        b.tau_right_identity();
      else
        b.tau_right();
      break;
    case MoveKind::Dual:
      if (is_plain(w.at(move.position)))
        b.xi_inverse(move.position);
      else
        b.xi(move.position);
      break;
  }
  return b.build();
}

RationalMap path_transform(const WordContext& ctx, const Word& from, const Word& to, const std::set<MoveKind>& allowed,
                           bool restricted) {
  RationalMap m = RationalMap::identity(from, ctx.cartan().rank);
  Word cur = from;
  for (const Move& mv : ctx.move_path(from, to, allowed)) {
    m = m.then(dmove_transform(ctx, cur, mv, restricted));
    cur = mv.after;
  }
  return m;
}

RationalMap zeta_map(const WordContext& ctx, const Word& P, bool restricted) {
  if (!std::all_of(P.begin(), P.end(), is_plain)) throw PreconditionFailed("zeta needs a plain word");
  if (!is_reduced(ctx.cartan(), P)) throw PreconditionFailed("zeta needs a reduced word");
  MapBuilder b(ctx, P);
  const std::size_t m = P.size();
  for (std::size_t k = m; k >= 1; --k) {
    // word = (m-k barred letters) + i_1..i_k
    b.tau_right();
    for (std::size_t q = b.word().size() - 1; q > m - k; --q) b.swap(q - 1, restricted);
  }
  return b.build();
}

RationalMap zeta_negative_map(const WordContext& ctx, const Word& Q, std::size_t steps) {
  if (std::any_of(Q.begin(), Q.end(), is_plain)) throw PreconditionFailed("negative zeta steps need a barred word");
  if (steps > Q.size()) throw PreconditionFailed("more zeta steps than letters");
  MapBuilder b(ctx, Q);
  const std::size_t m = Q.size();
  for (std::size_t k = 1; k <= steps; ++k) {
    b.tau_left();
    for (std::size_t q = 0; q + k < m; ++q) b.swap(q, false);
  }
  return b.build();
}

RationalMap xi_map(const WordContext& ctx, const Word& w, std::size_t p) { return MapBuilder(ctx, w).xi(p).build(); }

RationalMap xi_inverse_map(const WordContext& ctx, const Word& w, std::size_t p) {
  return MapBuilder(ctx, w).xi_inverse(p).build();
}

RationalMap run_dhat_path(const WordContext& ctx, const Word& start,
                          const std::vector<std::pair<State, WordContext::Edge>>& path) {
  MapBuilder b(ctx, start);
  for (const auto& [state, edge] : path) {
    if (state.word != b.word()) throw std::logic_error("d-hat chain does not start at the builder's word");
    switch (edge.kind) {
      case MoveKind::Mixed2: b.swap(edge.position, true); break;
      case MoveKind::PositiveD:
      case MoveKind::NegativeD: b.dmove(edge.position, true); break;
      case MoveKind::TauRight: b.tau_right_identity(); break;
      case MoveKind::Dual:
        if (edge.inverse_dual)
          b.xi_inverse(edge.position);
        else
          b.xi(edge.position);
        break;
      case MoveKind::TauLeft: throw InapplicableMove("left tau-moves are not d-hat moves");
    }
  }
  return b.build();
}

RationalMap mu_hat_map(const WordContext& ctx, const State& from, const State& to, const WeylElement& v) {
  return run_dhat_path(ctx, from.word, ctx.dhat_path(from, to, v, WordContext::dhat_moves()));
}

std::vector<ArtinChoice> artin_choices(const WordContext& ctx, const State& start, int j) {
  const CartanData& c = ctx.cartan();
  if (j < 1 || j > c.rank) throw std::out_of_range("Artin generator index out of range");
  const WeylElement& v = ctx.w0();
  if (!ctx.classes(start.word).count({v, start.w1}))
    throw PreconditionFailed("'" + format_word(start.word) + "' is not in the requested class");
  std::vector<ArtinChoice> out;
  for (const State& s : ctx.dhat_component(start, v, WordContext::dhat_moves())) {
    if (s.word.empty() || s.word.front() != j) continue;
    State left{left_tau_word(s.word), s.w1 * WeylElement::simple(c, ctx.star_letter(j))};
    if (ctx.classes(left.word).count({v, left.w1})) out.push_back(ArtinChoice{start, s, left});
  }
  return out;
}

RationalMap artin_T_map(const WordContext& ctx, const State& start, int j, std::size_t choice) {
  const auto choices = artin_choices(ctx, start, j);
  if (choice >= choices.size())
    throw NoPath("no pivot word starting with " + std::to_string(j) + " reachable from '" + format_word(start.word) +
                 "'");
  const ArtinChoice& ch = choices[choice];
  const WeylElement& v = ctx.w0();
  RationalMap m = mu_hat_map(ctx, start, ch.pivot, v);
  m = m.then(MapBuilder(ctx, ch.pivot.word).tau_left().build());
  return m.then(mu_hat_map(ctx, ch.left, start, v));
}

RationalMap artin_T_w_map(const WordContext& ctx, const State& start, const WeylElement& w) {
  RationalMap m = RationalMap::identity(start.word, ctx.cartan().rank);
  for (int j : w.reduced_word()) m = m.then(artin_T_map(ctx, start, j));
  return m;
}

// ---- Poisson

std::vector<std::vector<Rational>> eps_hat_matrix(const Seed& s) {
  std::vector<std::vector<Rational>> m(s.size(), std::vector<Rational>(s.size()));
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = 0; j < s.size(); ++j) m[i][j] = s.e_hat(i, j);
  return m;
}

Verdict is_poisson_map(const RationalMap& m, const std::vector<std::vector<Rational>>& source_eps_hat,
                       const std::vector<std::vector<Rational>>& target_eps_hat, const TrialConfig& cfg) {
  const std::size_t dim = source_eps_hat.size();
  auto pair_fn = [&](const auto& pt) {
    using T = typename std::decay_t<decltype(pt)>::value_type;
    const auto F = m.apply(jet_lift_all(pt));
    const auto B = pushforward_brackets(source_eps_hat, pt, F);
    std::vector<T> lhs, rhs;
    for (std::size_t a = 0; a < F.size(); ++a)
      for (std::size_t b = 0; b < F.size(); ++b) {
        lhs.push_back(B[a][b]);
        rhs.push_back(from_rational_like(pt.at(0), target_eps_hat[a][b]) * F[a].value * F[b].value);
      }
    return std::make_pair(lhs, rhs);
  };
  return maps_equal_probabilistic(pair_fn, dim, cfg);
}

Verdict is_poisson_map(const WordContext& ctx, const RationalMap& m, const TrialConfig& cfg, bool bracket) {
  Seed s = seed_for_word(ctx.cartan(), m.source()), t = seed_for_word(ctx.cartan(), m.target());
  if (bracket) {
    s = bracket_seed(s);
    t = bracket_seed(t);
  }
  return is_poisson_map(m, eps_hat_matrix(s), eps_hat_matrix(t), cfg);
}

}  // namespace cdual
