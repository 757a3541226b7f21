#include "cdual/arith.hpp"

#include <limits>

namespace cdual {

Rational::Rational(long long n, long long d) {
  if (d == 0) throw DivisionByZero();
  q_ = mpq_class(mpz_class(static_cast<long>(n)), mpz_class(static_cast<long>(d)));
  q_.canonicalize();
}

Rational Rational::parse(const std::string& s) {
  mpq_class q;
  if (q.set_str(s, 10) != 0) throw std::invalid_argument("not a rational number: '" + s + "'");
  if (q.get_den() == 0) throw DivisionByZero();
  return Rational(q);
}

long long Rational::to_ll() const {
  if (!is_integer() || !q_.get_num().fits_slong_p()) throw std::range_error("rational does not fit in a 64-bit integer");
  return q_.get_num().get_si();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.q_ == 0) throw DivisionByZero();
  q_ /= o.q_;
  return *this;
}

Fp::Fp(long long v, std::uint64_t p) : p_(p) {
  long long m = v % static_cast<long long>(p);
  if (m < 0) m += static_cast<long long>(p);
  v_ = static_cast<std::uint64_t>(m);
}

Fp Fp::inverse() const {
  if (v_ == 0) throw DivisionByZero();
  // Extended Euclid on signed 128-bit values; p < 2^63 keeps everything in range.
  __int128 a = v_, b = p_, x0 = 1, x1 = 0;
  while (b) {
    __int128 q = a / b, t = a - q * b;
    a = b;
    b = t;
    t = x0 - q * x1;
    x0 = x1;
    x1 = t;
  }
  if (x0 < 0) x0 += p_;
  Fp r;
  r.p_ = p_;
  r.v_ = static_cast<std::uint64_t>(x0);
  return r;
}

Fp reduce(const Rational& q, std::uint64_t p) {
  mpz_class P(std::to_string(p));
  mpz_class n = q.num() % P, d = q.den() % P;
  if (n < 0) n += P;
  if (d == 0) throw DivisionByZero();
  Fp fn = Fp::from_u64(std::stoull(n.get_str()), p);
  Fp fd = Fp::from_u64(std::stoull(d.get_str()), p);
  return fn / fd;
}

namespace {
Fp fp_pow(Fp b, std::uint64_t e) {
  Fp r = Fp::from_u64(1, b.prime());
  while (e) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}
}  // namespace

std::optional<Fp> sqrt_fp(const Fp& a) {
  const std::uint64_t p = a.prime();
  if (a.value() == 0) return a;
  if (p == 2) return a;
  if (fp_pow(a, (p - 1) / 2).value() != 1) return std::nullopt;
  std::uint64_t q = p - 1, s = 0;
  while ((q & 1) == 0) {
    q >>= 1;
    ++s;
  }
  Fp z = Fp::from_u64(2, p);
  while (fp_pow(z, (p - 1) / 2).value() == 1) z += Fp::from_u64(1, p);
  Fp c = fp_pow(z, q), x = fp_pow(a, (q + 1) / 2), t = fp_pow(a, q);
  std::uint64_t m = s;
  while (t.value() != 1) {
    std::uint64_t i = 0;
    Fp tt = t;
    while (tt.value() != 1) {
      tt *= tt;
      ++i;
    }
    Fp b = c;
    for (std::uint64_t k = 0; k + i + 1 < m; ++k) b *= b;
    x *= b;
    c = b * b;
    t *= c;
    m = i;
  }
  return x;
}

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t small : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % small == 0) return n == small;
  }
  std::uint64_t d = n - 1, s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // This witness set is deterministic for all 64-bit inputs.
  for (std::uint64_t w : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    Fp x = fp_pow(Fp::from_u64(w, n), d);
    if (x.value() == 1 || x.value() == n - 1) continue;
    bool composite = true;
    for (std::uint64_t r = 1; r < s; ++r) {
      x *= x;
      if (x.value() == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::string to_string(const Rational& a) { return a.str(); }
std::string to_string(const Fp& a) { return std::to_string(a.value()); }

}  // namespace cdual
