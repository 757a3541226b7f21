#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace cdual {

struct DivisionByZero : std::domain_error {
  DivisionByZero() : std::domain_error("division by zero") {}
};

// Raised by maps whose formula has a vanishing denominator at the given point.
struct SingularPoint : std::domain_error {
  explicit SingularPoint(const std::string& what) : std::domain_error(what) {}
};

// Exact rational, always in lowest terms with positive denominator.
class Rational {
 public:
  Rational() = default;
  Rational(long long n) : q_(static_cast<long>(n)) {}  // NOLINT
  Rational(long long n, long long d);
  explicit Rational(const mpq_class& q) : q_(q) { q_.canonicalize(); }
  static Rational parse(const std::string& s);

  const mpq_class& raw() const { return q_; }
  mpz_class num() const { return q_.get_num(); }
  mpz_class den() const { return q_.get_den(); }
  bool is_integer() const { return q_.get_den() == 1; }
  long long to_ll() const;  // requires is_integer() and fits in 64 bits
  std::string str() const { return q_.get_str(); }

  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o);
  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  Rational operator-() const { return Rational(mpq_class(-q_)); }
  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.q_ < b.q_; }
  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  mpq_class q_{0};
};

// Element of F_p for a runtime prime p < 2^63. The modulus travels with the value,
// so independent trials may use different primes concurrently.
class Fp {
 public:
  Fp() = default;
  Fp(long long v, std::uint64_t p);
  static Fp from_u64(std::uint64_t v, std::uint64_t p) { Fp r; r.p_ = p; r.v_ = v % p; return r; }

  std::uint64_t value() const { return v_; }
  std::uint64_t prime() const { return p_; }
  Fp inverse() const;

  Fp& operator+=(const Fp& o) { v_ += o.v_; if (v_ >= p_) v_ -= p_; return *this; }
  Fp& operator-=(const Fp& o) { v_ = v_ >= o.v_ ? v_ - o.v_ : v_ + p_ - o.v_; return *this; }
  Fp& operator*=(const Fp& o) {
    v_ = static_cast<std::uint64_t>(static_cast<unsigned __int128>(v_) * o.v_ % p_);
    return *this;
  }
  Fp& operator/=(const Fp& o) { return *this *= o.inverse(); }
  friend Fp operator+(Fp a, const Fp& b) { return a += b; }
  friend Fp operator-(Fp a, const Fp& b) { return a -= b; }
  friend Fp operator*(Fp a, const Fp& b) { return a *= b; }
  friend Fp operator/(Fp a, const Fp& b) { return a /= b; }
  Fp operator-() const { Fp r = *this; r.v_ = v_ ? p_ - v_ : 0; return r; }
  friend bool operator==(const Fp& a, const Fp& b) { return a.v_ == b.v_ && a.p_ == b.p_; }
  friend std::ostream& operator<<(std::ostream& os, const Fp& a) { return os << a.v_; }

 private:
  std::uint64_t v_ = 0;
  std::uint64_t p_ = 2;
};

template <class T>
T inv(const T& x);

// First-order jet: a value together with its partial derivatives along tracked coordinates.
template <class T>
struct Jet {
  T value{};
  std::vector<T> d;

  Jet() = default;
  Jet(T v, std::vector<T> partials) : value(std::move(v)), d(std::move(partials)) {}

  Jet& operator+=(const Jet& o) { value += o.value; for (size_t i = 0; i < d.size(); ++i) d[i] += o.d[i]; return *this; }
  Jet& operator-=(const Jet& o) { value -= o.value; for (size_t i = 0; i < d.size(); ++i) d[i] -= o.d[i]; return *this; }
  Jet& operator*=(const Jet& o) {
    for (size_t i = 0; i < d.size(); ++i) d[i] = d[i] * o.value + value * o.d[i];
    value *= o.value;
    return *this;
  }
  Jet& operator/=(const Jet& o) {
    T r = inv(o.value);
    T r2 = r * r;
    for (size_t i = 0; i < d.size(); ++i) d[i] = (d[i] * o.value - value * o.d[i]) * r2;
    value *= r;
    return *this;
  }
  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator*(Jet a, const Jet& b) { return a *= b; }
  friend Jet operator/(Jet a, const Jet& b) { return a /= b; }
  Jet operator-() const { Jet r = *this; r.value = -r.value; for (auto& x : r.d) x = -x; return r; }
  friend bool operator==(const Jet& a, const Jet& b) { return a.value == b.value && a.d == b.d; }
};

// ---- uniform scalar helpers, found by overload resolution for every field type

inline bool is_zero(const Rational& a) { return a.raw() == 0; }
inline bool is_zero(const Fp& a) { return a.value() == 0; }
template <class T>
bool is_zero(const Jet<T>& a) { return is_zero(a.value); }

inline Rational from_int_like(const Rational&, long long n) { return Rational(n); }
inline Fp from_int_like(const Fp& like, long long n) { return Fp(n, like.prime()); }
template <class T>
Jet<T> from_int_like(const Jet<T>& like, long long n) {
  return Jet<T>(from_int_like(like.value, n), std::vector<T>(like.d.size(), from_int_like(like.value, 0)));
}

template <class T>
T one_like(const T& x) { return from_int_like(x, 1); }
template <class T>
T zero_like(const T& x) { return from_int_like(x, 0); }

template <class T>
T inv(const T& x) {
  if (is_zero(x)) throw DivisionByZero();
  return one_like(x) / x;
}

// x^e for any integer e; negative exponents require x != 0.
template <class T>
T ipow(const T& x, long long e) {
  if (e < 0) return ipow(inv(x), -e);
  T r = one_like(x), b = x;
  while (e) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

// Reduction of an exact rational into F_p; throws DivisionByZero if p divides the denominator.
Fp reduce(const Rational& q, std::uint64_t p);

// Square root in F_p (Tonelli-Shanks); nullopt for non-residues.
std::optional<Fp> sqrt_fp(const Fp& a);

bool is_prime_u64(std::uint64_t n);

template <class T>
Jet<T> jet_constant(const T& v, size_t dim) { return Jet<T>(v, std::vector<T>(dim, zero_like(v))); }

// Lift point[index] into a jet carrying the unit partial along `index`.
template <class T>
Jet<T> jet_lift(const std::vector<T>& point, size_t index) {
  if (index >= point.size()) throw std::out_of_range("jet_lift: coordinate index out of range");
  Jet<T> j = jet_constant(point[index], point.size());
  j.d[index] = one_like(point[index]);
  return j;
}

template <class T>
std::vector<Jet<T>> jet_lift_all(const std::vector<T>& point) {
  std::vector<Jet<T>> out;
  out.reserve(point.size());
  for (size_t i = 0; i < point.size(); ++i) out.push_back(jet_lift(point, i));
  return out;
}

// Underlying scalar of a jet, or the scalar itself.
inline const Rational& scalar_value(const Rational& a) { return a; }
inline const Fp& scalar_value(const Fp& a) { return a; }
template <class T>
const T& scalar_value(const Jet<T>& a) { return a.value; }

std::string to_string(const Rational& a);
std::string to_string(const Fp& a);
template <class T>
std::string to_string(const Jet<T>& a) { return to_string(a.value); }

}  // namespace cdual
