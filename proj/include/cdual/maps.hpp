#pragma once

#include "cdual/arith.hpp"
#include "cdual/seeds.hpp"
#include "cdual/trials.hpp"
#include "cdual/words.hpp"

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace cdual {

template <class T>
struct TorusPoint {
  Word word;
  int rank = 0;
  std::vector<T> values;  // in Layout::of(word, rank) order

  Layout layout() const { return Layout::of(word, rank); }
  const T& at(int j, int k) const { return values[layout().index(j, k)]; }
  T& at(int j, int k) { return values[layout().index(j, k)]; }
};

inline Rational from_rational_like(const Rational&, const Rational& q) { return q; }
inline Fp from_rational_like(const Fp& like, const Rational& q) { return reduce(q, like.prime()); }
template <class T>
Jet<T> from_rational_like(const Jet<T>& like, const Rational& q) {
  return jet_constant(from_rational_like(like.value, q), like.d.size());
}

class RationalMap;

// x_k -> 1/x_k; x_i -> x_i x_k^[e_i]+ (1+x_k)^-e_i with e_i = eps_ik, except where keep[i].
struct MutationStep {
  std::size_t k = 0;
  std::vector<long long> exps;
  std::vector<bool> keep;
};
// x_k -> 1/x_k; x_i -> x_i x_k^b_i.
struct TropicalStep {
  std::size_t k = 0;
  std::vector<long long> b;
};
// target[t] = source[from[t]]; an empty list with equal layouts is the identity.
struct RelabelStep {
  std::vector<std::size_t> from;
};
// Applies `inner` to the right factor of the split prefix | rest and amalgamates back.
struct EmbeddedStep {
  Word prefix;
  std::shared_ptr<const RationalMap> inner;
};
// P kbar -> P^square k*, and its inverse; `zeta` runs from P to P^square.
struct XiCoreStep {
  Word plain_block;
  int k = 0;
  int k_star = 0;
  std::shared_ptr<const RationalMap> zeta, zeta_inverse;
  bool inverse = false;
};

struct Step {
  Word source, target;
  std::variant<MutationStep, TropicalStep, RelabelStep, EmbeddedStep, XiCoreStep> body;
  std::optional<SeedIndex> index;  // direction of a (tropical) mutation, for reporting
};

std::string step_kind_name(const Step& s);

class RationalMap {
 public:
  RationalMap() = default;
  RationalMap(Word source, Word target, int rank) : source_(std::move(source)), target_(std::move(target)), rank_(rank) {}
  static RationalMap identity(const Word& w, int rank) { return RationalMap(w, w, rank); }

  const Word& source() const { return source_; }
  const Word& target() const { return target_; }
  int rank() const { return rank_; }
  const std::vector<Step>& steps() const { return steps_; }

  void push(Step s);
  // this, then `next`.
  RationalMap then(const RationalMap& next) const;
  RationalMap inverse() const;
  nlohmann::json to_json() const;

  template <class T>
  std::vector<T> apply(std::vector<T> x) const;
  template <class T>
  TorusPoint<T> apply(const TorusPoint<T>& p) const;

 private:
  Word source_, target_;
  int rank_ = 0;
  std::vector<Step> steps_;
};

Step invert_step(const Step& s);

// ---- evaluation

namespace detail {

template <class T>
void apply_mutation(const MutationStep& m, std::vector<T>& x) {
  const T xk = x[m.k];
  const T one = one_like(xk);
  const T opx = one + xk;
  bool need = false;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (i != m.k && !m.keep[i] && m.exps[i] != 0) need = true;
  if (need && is_zero(opx)) throw SingularPoint("1 + x_k vanishes at a mutation");
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i == m.k || m.keep[i] || m.exps[i] == 0) continue;
    const long long e = m.exps[i];
    x[i] = x[i] * ipow(xk, e > 0 ? e : 0) * ipow(opx, -e);
  }
  x[m.k] = inv(xk);
}

template <class T>
void apply_tropical(const TropicalStep& t, std::vector<T>& x) {
  const T xk = x[t.k];
  for (std::size_t i = 0; i < x.size(); ++i)
    if (i != t.k && t.b[i] != 0) x[i] = x[i] * ipow(xk, t.b[i]);
  x[t.k] = inv(xk);
}

// Left factor keeps the glued values; the right factor gets 1 at (j,0).
template <class T>
std::pair<std::vector<T>, std::vector<T>> split_values(const Word& left, const Word& right, int rank,
                                                       const std::vector<T>& x) {
  Word all = left;
  all.insert(all.end(), right.begin(), right.end());
  const Layout L = Layout::of(all, rank), L1 = Layout::of(left, rank), L2 = Layout::of(right, rank);
  if (x.size() != L.size()) throw std::invalid_argument("point dimension does not match the word");
  std::vector<T> x1(L1.size(), one_like(x.at(0))), x2(L2.size(), one_like(x.at(0)));
  for (int j = 1; j <= rank; ++j) {
    const int c1 = L1.counts[j];
    for (int k = 0; k <= c1; ++k) x1[L1.index(j, k)] = x[L.index(j, k)];
    for (int k = 1; k <= L2.counts[j]; ++k) x2[L2.index(j, k)] = x[L.index(j, k + c1)];
  }
  return {std::move(x1), std::move(x2)};
}

template <class T>
std::vector<T> amalgamate_values(const Word& left, const Word& right, int rank, const std::vector<T>& x1,
                                 const std::vector<T>& x2) {
  Word all = left;
  all.insert(all.end(), right.begin(), right.end());
  const Layout L = Layout::of(all, rank), L1 = Layout::of(left, rank), L2 = Layout::of(right, rank);
  std::vector<T> x(L.size(), one_like(x1.at(0)));
  for (int j = 1; j <= rank; ++j) {
    const int c1 = L1.counts[j];
    for (int k = 0; k <= c1; ++k) x[L.index(j, k)] = x1[L1.index(j, k)];
    x[L.index(j, c1)] = x[L.index(j, c1)] * x2[L2.index(j, 0)];
    for (int k = 1; k <= L2.counts[j]; ++k) x[L.index(j, k + c1)] = x2[L2.index(j, k)];
  }
  return x;
}

template <class T>
std::vector<T> xi_core_forward(const XiCoreStep& s, int rank, const Word& source, const Word& target,
                               const std::vector<T>& y) {
  const Word& P = s.plain_block;
  const Layout LS = Layout::of(source, rank), LT = Layout::of(target, rank), LP = Layout::of(P, rank);
  auto [xP, rest] = split_values(P, Word{-s.k}, rank, y);
  (void)rest;
  const std::vector<T> z = s.zeta->apply(xP);  // on P^square, same layout as P
  std::vector<T> out(LT.size(), one_like(y.at(0)));
  for (int a = 1; a <= rank; ++a) {
    for (int j = 0; j < LP.counts[a]; ++j) out[LT.index(a, j)] = z[LP.index(a, j)];
    out[LT.index(a, LT.counts[a])] = y[LS.index(a, LS.counts[a])];
  }
  const T rf_k = y[LS.index(s.k, LS.counts[s.k])];
  out[LT.index(s.k_star, LP.counts[s.k_star])] = z[LP.index(s.k_star, LP.counts[s.k_star])] * inv(rf_k);
  return out;
}

// The glued coordinate of the image is a monomial c^(+-1) h in the coordinate c = x_(k, N^k(P));
// the exponent is read off from f(2)/f(1) and the equation f(c) = target value solved directly.
template <class T>
std::vector<T> xi_core_backward(const XiCoreStep& s, int rank, const Word& source, const Word& target,
                                const std::vector<T>& pt) {
  const Word& P = s.plain_block;
  // Here `source` is the saltation target P^square k* and `target` is P kbar.
  const Layout LT = Layout::of(source, rank), LS = Layout::of(target, rank), LP = Layout::of(P, rank);
  const T one = one_like(pt.at(0));
  std::vector<T> rf(rank + 1, one);
  for (int a = 1; a <= rank; ++a) rf[a] = pt[LT.index(a, LT.counts[a])];
  std::vector<T> z(LP.size(), one);
  for (int a = 1; a <= rank; ++a)
    for (int j = 0; j < LP.counts[a]; ++j) z[LP.index(a, j)] = pt[LT.index(a, j)];
  const std::size_t glue = LP.index(s.k_star, LP.counts[s.k_star]);
  const T zg = pt[LT.index(s.k_star, LP.counts[s.k_star])] * rf[s.k];
  std::vector<T> xP = s.zeta_inverse->apply(z);
  for (int a = 1; a <= rank; ++a)
    if (a != s.k) xP[LP.index(a, LP.counts[a])] = rf[a];
  const std::size_t free_pos = LP.index(s.k, LP.counts[s.k]);
  auto f = [&](const T& c) {
    std::vector<T> t = xP;
    t[free_pos] = c;
    return s.zeta->apply(t)[glue];
  };
  const T two = from_int_like(one, 2);
  const T f1 = f(one), r = f(two) * inv(f1);
  int e = 0;
  if (scalar_value(r) == scalar_value(two))
    e = 1;
  else if (scalar_value(r) == scalar_value(inv(two)))
    e = -1;
  else
    throw SingularPoint("saltation inverse: glued coordinate is not a unit monomial at this point");
  const T c = zg * inv(f1);
  xP[free_pos] = e == 1 ? c : inv(c);
  std::vector<T> y(LS.size(), one);
  for (int a = 1; a <= rank; ++a)
    for (int j = 0; j <= LP.counts[a]; ++j) y[LS.index(a, j)] = xP[LP.index(a, j)];
  y[LS.index(s.k, LS.counts[s.k])] = rf[s.k];
  return y;
}

}  // namespace detail

template <class T>
std::vector<T> RationalMap::apply(std::vector<T> x) const {
  if (x.size() != Layout::of(source_, rank_).size())
    throw std::invalid_argument("point dimension does not match the source word '" + format_word(source_) + "'");
  for (const Step& st : steps_) {
    std::visit(
        [&](const auto& b) {
          using B = std::decay_t<decltype(b)>;
          if constexpr (std::is_same_v<B, MutationStep>) {
            detail::apply_mutation(b, x);
          } else if constexpr (std::is_same_v<B, TropicalStep>) {
            detail::apply_tropical(b, x);
          } else if constexpr (std::is_same_v<B, RelabelStep>) {
            if (!b.from.empty()) {
              std::vector<T> y;
              y.reserve(b.from.size());
              for (std::size_t f : b.from) y.push_back(x[f]);
              x = std::move(y);
            }
          } else if constexpr (std::is_same_v<B, EmbeddedStep>) {
            auto [x1, x2] = detail::split_values(b.prefix, b.inner->source(), rank_, x);
            x = detail::amalgamate_values(b.prefix, b.inner->target(), rank_, x1, b.inner->apply(std::move(x2)));
          } else {
            x = b.inverse ? detail::xi_core_backward(b, rank_, st.source, st.target, x)
                          : detail::xi_core_forward(b, rank_, st.source, st.target, x);
          }
        },
        st.body);
  }
  return x;
}

template <class T>
TorusPoint<T> RationalMap::apply(const TorusPoint<T>& p) const {
  if (p.word != source_) throw std::invalid_argument("point lives on '" + format_word(p.word) + "', map starts at '" +
                                                     format_word(source_) + "'");
  return TorusPoint<T>{target_, rank_, apply(p.values)};
}

// ---- primitive maps

RationalMap mutation_map(const Seed& s, std::size_t k, bool restricted = false);
RationalMap tropical_map(const Seed& s, std::size_t k, std::optional<Side> side = std::nullopt);

template <class T>
std::pair<std::vector<T>, std::vector<T>> split_point(const Word& left, const Word& right, int rank,
                                                      const std::vector<T>& x) {
  return detail::split_values(left, right, rank, x);
}
template <class T>
std::vector<T> amalgamate_points(const Word& left, const Word& right, int rank, const std::vector<T>& x1,
                                 const std::vector<T>& x2) {
  return detail::amalgamate_values(left, right, rank, x1, x2);
}

// Incremental construction of move pipelines. The builder tracks the current word and the
// current seed; the seed drifts away from the word seed only inside 4- and 6-move sequences.
class MapBuilder {
 public:
  MapBuilder(const WordContext& ctx, Word start);

  const Word& word() const { return word_; }
  const Seed& seed() const { return seed_; }

  MapBuilder& mutate(SeedIndex k, bool restricted);
  // Mixed 2-move at q: mu_(i,c+1) for repeated letters, the identity otherwise.
  MapBuilder& swap(std::size_t q, bool restricted);
  MapBuilder& dmove(std::size_t q, bool restricted);
  MapBuilder& tau_right();
  MapBuilder& tau_left();
  // Right tau-move contributing the identity on coordinates.
  MapBuilder& tau_right_identity();
  MapBuilder& move_letter(std::size_t from, std::size_t to, bool restricted);
  // Dual move at p on prefix | kbar P, and the inverse move on prefix | k* Q.
  MapBuilder& xi(std::size_t p);
  MapBuilder& xi_inverse(std::size_t p);
  MapBuilder& append(const RationalMap& m);

  RationalMap build() const { return map_; }

 private:
  void relabel_to(const Word& w, std::vector<std::size_t> from);
  void reset_seed();

  const WordContext& ctx_;
  Word word_;
  Seed seed_;
  RationalMap map_;
};

// Mutations of a generalized d-move in application order, then target[t] = source[relabel[t]]
// (empty relabel: the identity on the common layout).
struct DMovePlan {
  Word target;
  std::vector<SeedIndex> sequence;
  std::vector<std::size_t> relabel;
};
DMovePlan dmove_plan(const WordContext& ctx, const Word& w, std::size_t q);
// The mutated seed carried to the target layout; equals the target word seed when the move is a cluster transformation.
Seed dmove_seed_shadow(const WordContext& ctx, const Word& w, std::size_t q);

RationalMap dmove_transform(const WordContext& ctx, const Word& w, const Move& move, bool restricted = false);
// Chain of generalized d-moves (and tau-moves if allowed) found by BFS.
RationalMap path_transform(const WordContext& ctx, const Word& from, const Word& to, const std::set<MoveKind>& allowed,
                           bool restricted);

// zeta_i for a plain reduced word P: from P to P^square. `restricted` holds I0^R fixed in the swaps.
RationalMap zeta_map(const WordContext& ctx, const Word& P, bool restricted = false);
// zeta_{j(steps)} ... zeta_{j(1)} for a barred reduced word.
RationalMap zeta_negative_map(const WordContext& ctx, const Word& Q, std::size_t steps);

RationalMap xi_map(const WordContext& ctx, const Word& w, std::size_t p);
RationalMap xi_inverse_map(const WordContext& ctx, const Word& w, std::size_t p);

using State = WordContext::State;
RationalMap mu_hat_map(const WordContext& ctx, const State& from, const State& to, const WeylElement& v);
// Runs a d-hat chain returned by WordContext::dhat_path.
RationalMap run_dhat_path(const WordContext& ctx, const Word& start,
                          const std::vector<std::pair<State, WordContext::Edge>>& path);

struct ArtinChoice {
  State start, pivot, left;  // pivot word begins with +j; left is its left tau image
};
// Admissible pivots in BFS order of the d-hat component of (word, w1) at v = w0.
std::vector<ArtinChoice> artin_choices(const WordContext& ctx, const State& start, int j);
RationalMap artin_T_map(const WordContext& ctx, const State& start, int j, std::size_t choice = 0);
// T_{i_n} o ... o T_{i_1} over the cached reduced word of w.
RationalMap artin_T_w_map(const WordContext& ctx, const State& start, const WeylElement& w);

// ---- Poisson brackets

// B_ab = sum_ij eps_hat_ij x_i x_j d_i F_a d_j F_b for jets F carrying full gradients.
template <class T>
std::vector<std::vector<T>> pushforward_brackets(const std::vector<std::vector<Rational>>& eps_hat,
                                                 const std::vector<T>& point, const std::vector<Jet<T>>& F) {
  const std::size_t n = point.size(), m = F.size();
  const T zero = zero_like(point.at(0));
  // G[i][b] = sum_j eps_hat_ij x_j d_j F_b
  std::vector<std::vector<T>> G(n, std::vector<T>(m, zero));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (eps_hat[i][j] == Rational(0)) continue;
      const T c = from_rational_like(zero, eps_hat[i][j]) * point[j];
      for (std::size_t b = 0; b < m; ++b) G[i][b] = G[i][b] + c * F[b].d[j];
    }
  std::vector<std::vector<T>> B(m, std::vector<T>(m, zero));
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t i = 0; i < n; ++i) {
      if (is_zero(F[a].d[i])) continue;
      const T c = point[i] * F[a].d[i];
      for (std::size_t b = 0; b < m; ++b) B[a][b] = B[a][b] + c * G[i][b];
    }
  return B;
}

std::vector<std::vector<Rational>> eps_hat_matrix(const Seed& s);

template <class T, class F, class G>
T poisson_bracket_at(const std::vector<std::vector<Rational>>& eps_hat, const F& f, const G& g,
                     const std::vector<T>& point) {
  const auto jets = jet_lift_all(point);
  const std::vector<Jet<T>> out{f(jets), g(jets)};
  return pushforward_brackets(eps_hat, point, out)[0][1];
}

// {m*x'_a, m*x'_b} = eps_hat'_ab (m*x'_a)(m*x'_b) for all pairs, at random points.
Verdict is_poisson_map(const RationalMap& m, const std::vector<std::vector<Rational>>& source_eps_hat,
                       const std::vector<std::vector<Rational>>& target_eps_hat, const TrialConfig& cfg);
// Word seeds (or their bracket seeds) at both ends.
Verdict is_poisson_map(const WordContext& ctx, const RationalMap& m, const TrialConfig& cfg, bool bracket = false);

}  // namespace cdual
