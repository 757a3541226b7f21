#pragma once

// Closed forms of the rank-one twisted evaluations, written in s with t = s^2.

#include "cdual/group.hpp"

#include <array>
#include <string>

namespace cdual::pgl2 {

template <class T>
Matrix<T> mat(const T& a, const T& b, const T& c, const T& d) {
  Matrix<T> m(2, a);
  m(0, 1) = b;
  m(1, 0) = c;
  m(1, 1) = d;
  return m;
}

// Word "1", coordinates (x0, t).
template <class T>
Matrix<T> ev_hat_1(const T& x0, const T& s) {
  const T si = inv(s);
  return mat(s + si, -x0 * si, inv(x0) * s, zero_like(s));
}

// Words "-1,1" and "-1,-1", coordinates (y0, y1, t).
template <class T>
Matrix<T> ev_hat_bar1_1(const T& y0, const T& y1, const T& s) {
  const T one = one_like(s), si = inv(s);
  return mat(si * (one + y1) + s, -y0 * y1 * si, inv(y0) * (s * (one + inv(y1)) + si * (one + y1)), -y1 * si);
}

// Word "1,-1" in the class shared with "-1,1", coordinates (y0~, y1~, t). The bottom-right
// entry is -y1~^-1 s^-1: with it the determinant is 1 and the matrix equals ev_hat_bar1_1 pulled
// back along the mixed 2-move.
template <class T>
Matrix<T> ev_hat_1_bar1(const T& u0, const T& u1, const T& s) {
  const T one = one_like(s), si = inv(s), iu1 = inv(u1);
  return mat(si * (one + iu1) + s, -si * u0 * (one + iu1), inv(u0) * (s + si * iu1), -iu1 * si);
}
// The same matrix with the bottom-right entry as displayed in the reference example, -y1~^-1 s.
template <class T>
Matrix<T> ev_hat_1_bar1_displayed(const T& u0, const T& u1, const T& s) {
  Matrix<T> m = ev_hat_1_bar1(u0, u1, s);
  m(1, 1) = -inv(u1) * s;
  return m;
}

// Words "1,1" and "1,-1" in the class of "1,1", coordinates (z0, z1, t).
template <class T>
Matrix<T> ev_hat_1_1(const T& z0, const T& z1, const T& s) {
  const T one = one_like(s), si = inv(s), iz1 = inv(z1);
  return mat((one + iz1) * s + si, -z0 * ((one + iz1) * s + (one + z1) * si), inv(z0) * iz1 * s, -iz1 * s);
}

// Saltation on "-1,1" and the Artin generator on "1,1", coordinates (., ., t).
template <class T>
std::array<T, 3> xi_s1(const T& y0, const T& y1, const T& t) {
  const T one = one_like(t), iy1 = inv(y1);
  return {y0 * inv(one + iy1) * inv(one + iy1 * t), iy1 * t, t};
}
template <class T>
std::array<T, 3> artin_T1(const T& z0, const T& z1, const T& t) {
  const T one = one_like(t), iz1 = inv(z1);
  return {inv(z0) * inv(one + iz1) * inv(one + iz1 * t), iz1 * t, t};
}
// The square as displayed: (z0 z1^-2 t^2, z1, t).
template <class T>
std::array<T, 3> artin_T1_squared_displayed(const T& z0, const T& z1, const T& t) {
  return {z0 * inv(z1 * z1) * t * t, z1, t};
}
// The square obtained by composing artin_T1 with itself: (t z0 z1^-2, z1, t).
template <class T>
std::array<T, 3> artin_T1_squared_composed(const T& z0, const T& z1, const T& t) {
  return {z0 * inv(z1 * z1) * t, z1, t};
}

// {t_a, t_b} for the entries t11, t12, t21, t22 of a determinant-one representative, as a
// quadratic form in those entries; pairs are indexed 0..3 in row-major order.
template <class T>
T bracket_table(std::size_t a, std::size_t b, const std::array<T, 4>& t) {
  if (a == b) return zero_like(t[0]);
  if (a > b) return -bracket_table(b, a, t);
  const T &t11 = t[0], &t12 = t[1], &t21 = t[2], &t22 = t[3];
  if (a == 0 && b == 1) return t12 * t22;
  if (a == 0 && b == 2) return -t21 * t22;
  if (a == 0 && b == 3) return zero_like(t11);
  if (a == 1 && b == 2) return t11 * t22 - t22 * t22;
  if (a == 1 && b == 3) return t12 * t22;
  return -t21 * t22;  // (2, 3)
}

inline const char* entry_name(std::size_t a) {
  static const char* names[] = {"t11", "t12", "t21", "t22"};
  return names[a];
}

}  // namespace cdual::pgl2
