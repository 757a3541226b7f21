#pragma once

#include "cdual/arith.hpp"
#include "cdual/cartan.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace cdual {

struct NotInBigCell : SingularPoint {
  NotInBigCell(const std::string& what, std::size_t minor) : SingularPoint(what), minor(minor) {}
  std::size_t minor;  // first vanishing leading principal minor, 0-based
};
struct UnsupportedForType : std::invalid_argument {
  explicit UnsupportedForType(const std::string& what) : std::invalid_argument(what) {}
};
struct InvalidParameter : std::invalid_argument {
  explicit InvalidParameter(const std::string& what) : std::invalid_argument(what) {}
};

// The matrix layer realizes type A_n only.
inline bool is_type_a_matrix_layer(const CartanData& c) { return c.type == 'A'; }

// Square matrix over one of the scalar types; the GL_{n+1} lift of type A_n group elements.
template <class T>
struct Matrix {
  std::size_t n = 0;
  std::vector<T> a;  // row-major

  Matrix() = default;
  Matrix(std::size_t n, const T& fill) : n(n), a(n * n, fill) {}
  static Matrix identity(std::size_t n, const T& like) {
    Matrix m(n, zero_like(like));
    for (std::size_t i = 0; i < n; ++i) m(i, i) = one_like(like);
    return m;
  }
  T& operator()(std::size_t i, std::size_t j) { return a[i * n + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return a[i * n + j]; }
  const T& like() const { return a.at(0); }

  Matrix operator*(const Matrix& o) const {
    Matrix r(n, zero_like(like()));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) {
        if (is_zero((*this)(i, k))) continue;
        for (std::size_t j = 0; j < n; ++j) r(i, j) = r(i, j) + (*this)(i, k) * o(k, j);
      }
    return r;
  }
  Matrix transpose() const {
    Matrix r = *this;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) r(i, j) = (*this)(j, i);
    return r;
  }
  bool operator==(const Matrix& o) const {
    if (n != o.n) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
      if (!(scalar_value(a[i]) == scalar_value(o.a[i]))) return false;
    return true;
  }
};

// Gauss-Jordan inverse; throws SingularPoint on a singular matrix.
template <class T>
Matrix<T> inverse(const Matrix<T>& m) {
  const std::size_t n = m.n;
  Matrix<T> A = m, R = Matrix<T>::identity(n, m.like());
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && is_zero(A(piv, c))) ++piv;
    if (piv == n) throw SingularPoint("singular matrix");
    if (piv != c)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(A(c, j), A(piv, j));
        std::swap(R(c, j), R(piv, j));
      }
    const T ic = inv(A(c, c));
    for (std::size_t j = 0; j < n; ++j) {
      A(c, j) = A(c, j) * ic;
      R(c, j) = R(c, j) * ic;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || is_zero(A(r, c))) continue;
      const T f = A(r, c);
      for (std::size_t j = 0; j < n; ++j) {
        A(r, j) = A(r, j) - f * A(c, j);
        R(r, j) = R(r, j) - f * R(c, j);
      }
    }
  }
  return R;
}

// ---- generators of SL_{n+1} / PGL_{n+1}, letters 1..n

template <class T>
void check_letter(std::size_t N, int i) {
  if (i < 1 || static_cast<std::size_t>(i) >= N) throw InvalidParameter("generator index " + std::to_string(i) + " out of range");
}

template <class T>
Matrix<T> gen_E(std::size_t N, int i, const T& like) {
  check_letter<T>(N, i);
  Matrix<T> m = Matrix<T>::identity(N, like);
  m(i - 1, i) = one_like(like);
  return m;
}
template <class T>
Matrix<T> gen_F(std::size_t N, int i, const T& like) {
  check_letter<T>(N, i);
  Matrix<T> m = Matrix<T>::identity(N, like);
  m(i, i - 1) = one_like(like);
  return m;
}
// diag(x,...,x,1,...,1) with i leading x's.
template <class T>
Matrix<T> gen_H(std::size_t N, int i, const T& x) {
  check_letter<T>(N, i);
  if (is_zero(x)) throw InvalidParameter("H(i,x) needs x != 0");
  Matrix<T> m = Matrix<T>::identity(N, x);
  for (int k = 0; k < i; ++k) m(k, k) = x;
  return m;
}
template <class T>
Matrix<T> x_pos(std::size_t N, int i, const T& t) {
  check_letter<T>(N, i);
  Matrix<T> m = Matrix<T>::identity(N, t);
  m(i - 1, i) = t;
  return m;
}
template <class T>
Matrix<T> x_neg(std::size_t N, int i, const T& t) {
  check_letter<T>(N, i);
  Matrix<T> m = Matrix<T>::identity(N, t);
  m(i, i - 1) = t;
  return m;
}
template <class T>
Matrix<T> s_hat(std::size_t N, int i, const T& like) {
  check_letter<T>(N, i);
  Matrix<T> m = Matrix<T>::identity(N, like);
  m(i - 1, i - 1) = zero_like(like);
  m(i, i) = zero_like(like);
  m(i - 1, i) = -one_like(like);
  m(i, i - 1) = one_like(like);
  return m;
}

// Product of s_hat over the letters, left to right.
template <class T>
Matrix<T> word_representative(std::size_t N, const std::vector<int>& letters, const T& like) {
  Matrix<T> m = Matrix<T>::identity(N, like);
  for (int l : letters) m = m * s_hat(N, l, like);
  return m;
}
template <class T>
Matrix<T> word_representative(const WeylElement& w, const T& like) {
  return word_representative(static_cast<std::size_t>(w.rank() + 1), w.reduced_word(), like);
}

template <class T>
struct GaussParts {
  Matrix<T> lower, diag, upper;
  Matrix<T> leq0() const { return lower * diag; }
  Matrix<T> geq0() const { return diag * upper; }
};

// g = lower * diag * upper without pivoting.
template <class T>
GaussParts<T> gauss(const Matrix<T>& g) {
  const std::size_t n = g.n;
  Matrix<T> U = g, L = Matrix<T>::identity(n, g.like());
  for (std::size_t c = 0; c < n; ++c) {
    if (is_zero(U(c, c))) throw NotInBigCell("leading principal minor " + std::to_string(c + 1) + " vanishes", c);
    const T ic = inv(U(c, c));
    for (std::size_t r = c + 1; r < n; ++r) {
      if (is_zero(U(r, c))) continue;
      const T f = U(r, c) * ic;
      L(r, c) = f;
      for (std::size_t j = c; j < n; ++j) U(r, j) = U(r, j) - f * U(c, j);
    }
  }
  GaussParts<T> out{L, Matrix<T>(n, zero_like(g.like())), Matrix<T>::identity(n, g.like())};
  for (std::size_t i = 0; i < n; ++i) {
    out.diag(i, i) = U(i, i);
    const T ii = inv(U(i, i));
    for (std::size_t j = i + 1; j < n; ++j) out.upper(i, j) = U(i, j) * ii;
  }
  return out;
}

template <class T>
Matrix<T> leq0(const Matrix<T>& g) {
  return gauss(g).leq0();
}
template <class T>
Matrix<T> geq0(const Matrix<T>& g) {
  return gauss(g).geq0();
}

// Sigma (g^T)^-1 Sigma with Sigma = diag(1,-1,1,...): swaps E and F, inverts the torus.
template <class T>
Matrix<T> theta(const Matrix<T>& g) {
  Matrix<T> r = inverse(g.transpose());
  for (std::size_t i = 0; i < g.n; ++i)
    for (std::size_t j = 0; j < g.n; ++j)
      if ((i + j) % 2) r(i, j) = -r(i, j);
  return r;
}

template <class T>
bool projective_eq(const Matrix<T>& g, const Matrix<T>& h) {
  if (g.n != h.n) return false;
  std::size_t pivot = g.a.size();
  for (std::size_t i = 0; i < g.a.size(); ++i) {
    if (is_zero(g.a[i]) != is_zero(h.a[i])) return false;
    if (pivot == g.a.size() && !is_zero(g.a[i])) pivot = i;
  }
  if (pivot == g.a.size()) return true;
  for (std::size_t i = 0; i < g.a.size(); ++i)
    if (!(scalar_value(g.a[i] * h.a[pivot]) == scalar_value(h.a[i] * g.a[pivot]))) return false;
  return true;
}

// Projective normal form: divided by the first nonzero entry, for comparing as vectors.
template <class T>
std::vector<T> projective_normal_form(const Matrix<T>& g) {
  std::size_t pivot = 0;
  while (pivot < g.a.size() && is_zero(g.a[pivot])) ++pivot;
  if (pivot == g.a.size()) throw SingularPoint("zero matrix has no projective class");
  const T ip = inv(g.a[pivot]);
  std::vector<T> out;
  out.reserve(g.a.size());
  for (const auto& x : g.a) out.push_back(x * ip);
  return out;
}

// n_minus = [g^-1]_-, so g = n_+ a n_minus^-1; b = x_neg(j, -c) with c the (j+1, j) entry.
template <class T>
std::pair<Matrix<T>, Matrix<T>> xi_and_ddminus(const Matrix<T>& g, int j) {
  const Matrix<T> nm = gauss(inverse(g)).lower;
  return {nm, x_neg(g.n, j, -nm(j, j - 1))};
}

template <class T>
T determinant(const Matrix<T>& g) {
  const std::size_t n = g.n;
  Matrix<T> A = g;
  T det = one_like(g.like());
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && is_zero(A(piv, c))) ++piv;
    if (piv == n) return zero_like(g.like());
    if (piv != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(A(c, j), A(piv, j));
      det = -det;
    }
    det = det * A(c, c);
    const T ic = inv(A(c, c));
    for (std::size_t r = c + 1; r < n; ++r) {
      const T f = A(r, c) * ic;
      for (std::size_t j = c; j < n; ++j) A(r, j) = A(r, j) - f * A(c, j);
    }
  }
  return det;
}

}  // namespace cdual
