#pragma once

#include "cdual/group.hpp"
#include "cdual/maps.hpp"
#include "cdual/words.hpp"

#include <vector>

namespace cdual {

// ---- evaluation maps on word tori (type A only)

template <class T>
Matrix<T> ev_cartan(int rank, const std::vector<T>& values_by_letter) {
  const std::size_t N = static_cast<std::size_t>(rank + 1);
  Matrix<T> M = Matrix<T>::identity(N, values_by_letter.at(1));
  for (int j = 1; j <= rank; ++j) M = M * gen_H(N, j, values_by_letter[j]);
  return M;
}

// prod_j H^j(x_(j,0)) followed by E^i H^i(x_(i,k)) (or F^i for barred letters) letter by letter.
template <class T>
Matrix<T> ev(int rank, const Word& w, const std::vector<T>& x) {
  const Layout L = Layout::of(w, rank);
  if (x.size() != L.size()) throw std::invalid_argument("point dimension does not match the word");
  const std::size_t N = static_cast<std::size_t>(rank + 1);
  Matrix<T> M = Matrix<T>::identity(N, x.at(0));
  for (int j = 1; j <= rank; ++j) M = M * gen_H(N, j, x[L.index(j, 0)]);
  std::vector<int> c(rank + 1, 0);
  for (int l : w) {
    const int i = letter_index(l);
    M = M * (is_plain(l) ? gen_E(N, i, x.at(0)) : gen_F(N, i, x.at(0)));
    M = M * gen_H(N, i, x[L.index(i, ++c[i])]);
  }
  return M;
}

template <class T>
std::vector<T> right_frozen_values(int rank, const Word& w, const std::vector<T>& x) {
  const Layout L = Layout::of(w, rank);
  std::vector<T> out(rank + 1, one_like(x.at(0)));
  for (int j = 1; j <= rank; ++j) out[j] = x[L.right_frozen(j)];
  return out;
}
template <class T>
std::vector<T> left_frozen_values(int rank, const Word& w, const std::vector<T>& x) {
  const Layout L = Layout::of(w, rank);
  std::vector<T> out(rank + 1, one_like(x.at(0)));
  for (int j = 1; j <= rank; ++j) out[j] = x[L.left_frozen(j)];
  return out;
}

template <class T>
Matrix<T> ev_red(int rank, const Word& w, const std::vector<T>& x) {
  std::vector<T> r = right_frozen_values(rank, w, x);
  for (int j = 1; j <= rank; ++j) r[j] = inv(r[j]);
  return ev(rank, w, x) * ev_cartan(rank, r);
}

template <class T>
Matrix<T> hat(const WeylElement& w, const T& like) {
  return word_representative(w, like);
}

struct EvHatPlan {
  int rank = 0;
  Word word;
  WeylElement v, w1;
  RationalMap to_trivial;  // restricted mixed 2-moves onto a trivial word
  Word trivial;
  WordContext::TrivialDecomposition decomposition;
  WeylElement w2w0, w0;
};

// Throws PreconditionFailed when the word is not in D_{w1}(v).
EvHatPlan make_ev_hat_plan(const WordContext& ctx, const Word& w, const WeylElement& v, const WeylElement& w1);

template <class T>
Matrix<T> ev_R_trivial(const EvHatPlan& p, const std::vector<T>& x) {
  const std::size_t s = p.decomposition.split;
  const Word i1(p.trivial.begin(), p.trivial.begin() + s), i2(p.trivial.begin() + s, p.trivial.end());
  auto [x1, x2] = split_point(i1, i2, p.rank, x);
  return ev(p.rank, i1, x1) * leq0(ev_red(p.rank, i2, x2) * hat(p.w2w0, x.at(0)));
}

template <class T>
Matrix<T> ev_L_trivial(const EvHatPlan& p, const std::vector<T>& x) {
  const std::size_t s = p.decomposition.split;
  const Word i1(p.trivial.begin(), p.trivial.begin() + s), i2(p.trivial.begin() + s, p.trivial.end());
  auto [x1, x2] = split_point(i1, i2, p.rank, x);
  // ev^R of i2 read as a trivial word with empty first factor.
  const Matrix<T> r = ev_cartan(p.rank, left_frozen_values(p.rank, i2, x2)) *
                      leq0(ev_red(p.rank, i2, x2) * hat(p.w2w0, x.at(0)));
  return ev(p.rank, i1, x1) * theta(leq0(theta(r) * hat(p.w0, x.at(0))));
}

// ev^L(x) ev_1(x(R))^-1 w0hat ev^R(x)^-1 after moving to the trivial word.
template <class T>
Matrix<T> ev_hat(const EvHatPlan& p, const std::vector<T>& x) {
  const std::vector<T> y = p.to_trivial.apply(x);
  const Matrix<T> L = ev_L_trivial(p, y), R = ev_R_trivial(p, y);
  const Matrix<T> mid = inverse(ev_cartan(p.rank, right_frozen_values(p.rank, p.trivial, y))) * hat(p.w0, x.at(0));
  return L * mid * inverse(R);
}

// Conjugation by s_hat_j b^j_-.
template <class T>
Matrix<T> dckp_T(int j, const Matrix<T>& g) {
  const auto [nm, b] = xi_and_ddminus(g, j);
  (void)nm;
  const Matrix<T> m = s_hat(g.n, j, g.like()) * b;
  return m * g * inverse(m);
}

struct TauProductPlan {
  int rank = 0;
  Word word;                       // barred reduced word of w0
  std::vector<RationalMap> zetas;  // zetas[k] runs the first k negative zeta steps
};
TauProductPlan make_tau_product_plan(const WordContext& ctx, const Word& barred);

// prod_k W_k^-1 x_neg(i_k, -y_(i_k,0)) W_k with y = zetas[k-1](x) and W_k = rep(i_{k+1} ... i_L).
template <class T>
Matrix<T> tau_product(const TauProductPlan& p, const std::vector<T>& x) {
  const std::size_t N = static_cast<std::size_t>(p.rank + 1), L = p.word.size();
  Matrix<T> M = Matrix<T>::identity(N, x.at(0));
  for (std::size_t k = 1; k <= L; ++k) {
    const int ik = -p.word[k - 1];
    const std::vector<T> y = p.zetas[k - 1].apply(x);
    const Layout LY = Layout::of(p.zetas[k - 1].target(), p.rank);
    std::vector<int> rest;
    for (std::size_t t = k; t < L; ++t) rest.push_back(-p.word[t]);
    const Matrix<T> W = word_representative(N, rest, x.at(0));
    M = M * inverse(W) * x_neg(N, ik, -y[LY.index(ik, 0)]) * W;
  }
  return M;
}

// x*_(i,j) = -x^-1_(i*,j) on the boundary 0 = j != N or 0 != j = N, x^-1_(i*,j) otherwise.
template <class T>
TorusPoint<T> star_transport(const WordContext& ctx, const Word& w, const std::vector<T>& x) {
  const int rank = ctx.cartan().rank;
  const Layout L = Layout::of(w, rank);
  const Word ws = ctx.star_word(w);
  const Layout LS = Layout::of(ws, rank);
  std::vector<T> y(LS.size(), one_like(x.at(0)));
  for (std::size_t p = 0; p < LS.size(); ++p) {
    const SeedIndex v = LS.vertex(p);
    const int is = ctx.star_letter(v.letter);
    const int N = L.counts[is];
    T val = inv(x[L.index(is, v.k)]);
    if ((v.k == 0 && N != 0) || (v.k != 0 && v.k == N)) val = -val;
    y[p] = val;
  }
  return TorusPoint<T>{ws, rank, std::move(y)};
}

template <class T>
std::vector<T> flatten(const Matrix<T>& m) {
  return m.a;
}

}  // namespace cdual
