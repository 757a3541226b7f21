#pragma once

// Random instance generators shared by the unit tests and the acceptance binary.

#include "cdual/arith.hpp"
#include "cdual/cartan.hpp"
#include "cdual/words.hpp"

#include <random>
#include <vector>

namespace cdual::fixtures {

inline constexpr std::uint64_t kPrime = (1ULL << 61) - 1;

inline Word random_word(std::mt19937_64& g, int rank, std::size_t min_len, std::size_t max_len) {
  std::uniform_int_distribution<std::size_t> len(min_len, max_len);
  std::uniform_int_distribution<int> letter(1, rank), sign(0, 1);
  Word w(len(g));
  for (int& l : w) l = sign(g) ? letter(g) : -letter(g);
  return w;
}

// Double reduced words: the barred and the plain letters each form a reduced word.
inline Word random_double_reduced(std::mt19937_64& g, const CartanData& c, std::size_t max_len) {
  for (;;) {
    Word w = random_word(g, c.rank, 1, max_len);
    if (classify(c, w).reduced) return w;
  }
}

inline std::vector<Fp> random_fp_point(std::mt19937_64& g, std::size_t dim, std::uint64_t p = kPrime) {
  std::uniform_int_distribution<std::uint64_t> d(2, p - 2);
  std::vector<Fp> x;
  for (std::size_t i = 0; i < dim; ++i) x.push_back(Fp::from_u64(d(g), p));
  return x;
}

// Small nonzero rationals away from -1, so mutation denominators stay nonzero.
inline std::vector<Rational> random_rational_point(std::mt19937_64& g, std::size_t dim) {
  std::uniform_int_distribution<long long> num(1, 40), den(1, 9);
  std::vector<Rational> x;
  for (std::size_t i = 0; i < dim; ++i) x.emplace_back(num(g), den(g));
  return x;
}

inline const std::vector<std::string>& rank_two_types() {
  static const std::vector<std::string> t{"A2", "B2", "G2"};
  return t;
}

}  // namespace cdual::fixtures
