#pragma once

#include "cdual/arith.hpp"
#include "cdual/cartan.hpp"

#include <compare>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace cdual {

struct FrozenDirection : std::invalid_argument {
  explicit FrozenDirection(const std::string& what) : std::invalid_argument(what) {}
};
struct FrozenStructureViolation : std::invalid_argument {
  explicit FrozenStructureViolation(const std::string& what) : std::invalid_argument(what) {}
};

// Vertex (letter, occurrence counter).
struct SeedIndex {
  int letter = 1;
  int k = 0;
  auto operator<=>(const SeedIndex&) const = default;
};

// Vertex layout of a word seed: (1,0..N1), (2,0..N2), ... in this order.
struct Layout {
  int rank = 0;
  std::vector<int> counts;   // counts[j] = N^j, index 0 unused
  std::vector<int> offsets;  // offsets[j] = position of (j,0)

  static Layout of(const Word& w, int rank);
  std::size_t size() const { return static_cast<std::size_t>(offsets[rank] + counts[rank] + 1); }
  std::size_t index(int j, int k) const;
  std::size_t index(SeedIndex v) const { return index(v.letter, v.k); }
  SeedIndex vertex(std::size_t pos) const;
  std::size_t left_frozen(int j) const { return index(j, 0); }
  std::size_t right_frozen(int j) const { return index(j, counts[j]); }
  bool operator==(const Layout& o) const { return counts == o.counts; }
};

enum class Side { Left, Right };

struct Seed {
  Word word;  // label of the word the seed was built from
  Layout layout;
  std::vector<std::vector<Rational>> eps;
  std::vector<int> d;
  std::vector<bool> frozen, cover_left, cover_right;

  std::size_t size() const { return eps.size(); }
  const Rational& e(std::size_t i, std::size_t j) const { return eps[i][j]; }
  // eps_ij d_j, skew-symmetric.
  Rational e_hat(std::size_t i, std::size_t j) const { return eps[i][j] * Rational(d[j]); }
  bool same_matrix(const Seed& o) const { return layout == o.layout && eps == o.eps && d == o.d; }
};

Seed elementary_seed(const CartanData& c, int letter);
// Seed of the empty word: the zero matrix on {(j,0)}.
Seed unit_seed(const CartanData& c);
Seed amalgamate(const Seed& s1, const Seed& s2);
Seed seed_for_word(const CartanData& c, const Word& w);

// eta: rows and columns meeting the right cover set are zeroed.
Seed bracket_seed(const Seed& s);

Seed mutate_seed(const Seed& s, std::size_t k);
// Cover set containing k; throws when k is frozen on both sides and no side is given.
Side cover_side(const Seed& s, std::size_t k, std::optional<Side> side = std::nullopt);
std::vector<bool> cover_members(const Seed& s, Side side);
Seed tropical_mutate_seed(const Seed& s, std::size_t k, std::optional<Side> side = std::nullopt);

// LCM of the denominators of eps on I0 x I0.
int common_denominator(const Seed& s);
// b_i = |D eps_ik| for i in the cover set of k other than k, 0 elsewhere.
std::vector<long long> tropical_exponents(const Seed& s, std::size_t k, Side side);

// Empty string when all structural invariants hold, otherwise the first violation.
std::string seed_invariant_violation(const Seed& s);

nlohmann::json seed_to_json(const Seed& s);
nlohmann::json rational_matrix_to_json(const std::vector<std::vector<Rational>>& m);
std::vector<std::vector<Rational>> rational_matrix_from_json(const nlohmann::json& j);

}  // namespace cdual
