#include "cdual/seeds.hpp"

#include "cdual/words.hpp"

#include <numeric>

namespace cdual {

Layout Layout::of(const Word& w, int rank) {
  Layout l;
  l.rank = rank;
  l.counts.assign(rank + 1, 0);
  l.offsets.assign(rank + 1, 0);
  for (int x : w) {
    if (x == 0 || letter_index(x) > rank) throw std::invalid_argument("letter " + std::to_string(x) + " out of range");
    ++l.counts[letter_index(x)];
  }
  for (int j = 2; j <= rank; ++j) l.offsets[j] = l.offsets[j - 1] + l.counts[j - 1] + 1;
  return l;
}

std::size_t Layout::index(int j, int k) const {
  if (j < 1 || j > rank || k < 0 || k > counts[j])
    throw std::out_of_range("vertex (" + std::to_string(j) + "," + std::to_string(k) + ") not in the seed");
  return static_cast<std::size_t>(offsets[j] + k);
}

SeedIndex Layout::vertex(std::size_t pos) const {
  for (int j = rank; j >= 1; --j)
    if (static_cast<int>(pos) >= offsets[j]) return SeedIndex{j, static_cast<int>(pos) - offsets[j]};
  throw std::out_of_range("vertex position out of range");
}

namespace {

Seed blank_seed(const CartanData& c, const Word& w) {
  Seed s;
  s.word = w;
  s.layout = Layout::of(w, c.rank);
  const std::size_t n = s.layout.size();
  s.eps.assign(n, std::vector<Rational>(n));
  s.d.assign(n, 1);
  s.frozen.assign(n, false);
  s.cover_left.assign(n, false);
  s.cover_right.assign(n, false);
  for (std::size_t p = 0; p < n; ++p) s.d[p] = c.d_i(s.layout.vertex(p).letter);
  for (int j = 1; j <= c.rank; ++j) {
    s.cover_left[s.layout.left_frozen(j)] = true;
    s.cover_right[s.layout.right_frozen(j)] = true;
  }
  for (std::size_t p = 0; p < n; ++p) s.frozen[p] = s.cover_left[p] || s.cover_right[p];
  return s;
}

// Adds eps_ab += val and the skew partner eps_ba -= val d_b / d_a.
void add_skew(Seed& s, std::size_t a, std::size_t b, const Rational& val) {
  s.eps[a][b] += val;
  s.eps[b][a] -= val * Rational(s.d[b], s.d[a]);
}

}  // namespace

Seed unit_seed(const CartanData& c) { return blank_seed(c, {}); }

Seed elementary_seed(const CartanData& c, int letter) {
  check_alphabet(c, {letter});
  Seed s = blank_seed(c, {letter});
  const int i = letter_index(letter), sg = is_plain(letter) ? 1 : -1;
  const std::size_t right = s.layout.index(i, 1), left_i = s.layout.index(i, 0);
  for (int j = 1; j <= c.rank; ++j) {
    // The entry uses a_ji: with D*A symmetric this is what makes the 4- and 6-move
    // mutation sequences transport seeds without relabeling.
    const Rational v(sg * c.a_ij(j, i), 2);
    if (v == Rational(0)) continue;
    add_skew(s, right, s.layout.index(j, 0), v);
    if (j != i) add_skew(s, left_i, s.layout.index(j, 0), -v);
  }
  return s;
}

Seed amalgamate(const Seed& s1, const Seed& s2) {
  if (s1.layout.rank != s2.layout.rank) throw std::invalid_argument("amalgamating seeds of different rank");
  CartanData shape;  // only rank and symmetrizers are needed to lay out the result
  shape.rank = s1.layout.rank;
  shape.d.assign(shape.rank, 1);
  for (int j = 1; j <= shape.rank; ++j) shape.d[j - 1] = s1.d[s1.layout.left_frozen(j)];
  Word w = s1.word;
  w.insert(w.end(), s2.word.begin(), s2.word.end());
  Seed s = blank_seed(shape, w);
  auto place1 = [&](std::size_t p) { return s.layout.index(s1.layout.vertex(p)); };
  auto place2 = [&](std::size_t p) {
    const SeedIndex v = s2.layout.vertex(p);
    return s.layout.index(v.letter, v.k + s1.layout.counts[v.letter]);
  };
  for (std::size_t a = 0; a < s1.size(); ++a)
    for (std::size_t b = 0; b < s1.size(); ++b) s.eps[place1(a)][place1(b)] += s1.eps[a][b];
  for (std::size_t a = 0; a < s2.size(); ++a)
    for (std::size_t b = 0; b < s2.size(); ++b) s.eps[place2(a)][place2(b)] += s2.eps[a][b];
  return s;
}

Seed seed_for_word(const CartanData& c, const Word& w) {
  Seed s = unit_seed(c);
  for (int l : w) s = amalgamate(s, elementary_seed(c, l));
  return s;
}

Seed bracket_seed(const Seed& s) {
  Seed out = s;
  for (std::size_t a = 0; a < s.size(); ++a)
    for (std::size_t b = 0; b < s.size(); ++b)
      if (s.cover_right[a] || s.cover_right[b]) out.eps[a][b] = Rational(0);
  return out;
}

namespace {
int sign(const Rational& x) { return x.raw() > 0 ? 1 : (x.raw() < 0 ? -1 : 0); }
Rational positive_part(const Rational& x) { return x.raw() > 0 ? x : Rational(0); }
}  // namespace

Seed mutate_seed(const Seed& s, std::size_t k) {
  if (k >= s.size()) throw std::out_of_range("mutation direction out of range");
  if (s.frozen[k]) throw FrozenDirection("mutation in a frozen direction");
  Seed out = s;
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = 0; j < s.size(); ++j) {
      if (i == k || j == k)
        out.eps[i][j] = -s.eps[i][j];
      else
        out.eps[i][j] = s.eps[i][j] + Rational(sign(s.eps[i][k])) * positive_part(s.eps[i][k] * s.eps[k][j]);
    }
  return out;
}

Side cover_side(const Seed& s, std::size_t k, std::optional<Side> side) {
  if (k >= s.size()) throw std::out_of_range("tropical direction out of range");
  if (!s.frozen[k]) throw FrozenStructureViolation("tropical mutation needs a frozen direction");
  if (side) {
    if ((*side == Side::Left ? s.cover_left[k] : s.cover_right[k])) return *side;
    throw FrozenStructureViolation("direction is not in the requested cover set");
  }
  if (s.cover_left[k] && s.cover_right[k]) throw FrozenStructureViolation("direction lies in both cover sets");
  return s.cover_left[k] ? Side::Left : Side::Right;
}

std::vector<bool> cover_members(const Seed& s, Side side) { return side == Side::Left ? s.cover_left : s.cover_right; }

int common_denominator(const Seed& s) {
  long long D = 1;
  for (std::size_t a = 0; a < s.size(); ++a)
    for (std::size_t b = 0; b < s.size(); ++b)
      if (s.frozen[a] && s.frozen[b]) D = std::lcm(D, std::stoll(s.eps[a][b].den().get_str()));
  return static_cast<int>(D);
}

std::vector<long long> tropical_exponents(const Seed& s, std::size_t k, Side side) {
  side = cover_side(s, k, side);
  const auto cover = cover_members(s, side);
  const Rational D(common_denominator(s));
  std::vector<long long> b(s.size(), 0);
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i == k || !cover[i]) continue;
    Rational v = s.eps[i][k] * D;
    if (!v.is_integer()) throw FrozenStructureViolation("non-integral tropical exponent");
    b[i] = std::llabs(v.to_ll());
  }
  return b;
}

Seed tropical_mutate_seed(const Seed& s, std::size_t k, std::optional<Side> side) {
  const Side sd = cover_side(s, k, side);
  const auto cover = cover_members(s, sd);
  const Rational D(common_denominator(s));
  Seed out = s;
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = 0; j < s.size(); ++j) {
      if (i == j) continue;
      if (i == k || j == k)
        out.eps[i][j] = -s.eps[i][j];
      else if (cover[i] && cover[j])
        out.eps[i][j] = s.eps[i][j];
      else
        out.eps[i][j] = s.eps[i][j] + Rational(sign(s.eps[i][k])) * positive_part(s.eps[i][k] * D * s.eps[k][j]);
    }
  return out;
}

std::string seed_invariant_violation(const Seed& s) {
  const std::size_t n = s.size();
  std::optional<Rational> frozen_den;
  for (std::size_t i = 0; i < n; ++i) {
    if (!(s.eps[i][i] == Rational(0))) return "nonzero diagonal";
    for (std::size_t j = 0; j < n; ++j) {
      if (!(s.e_hat(i, j) == -s.e_hat(j, i))) return "eps_hat is not skew-symmetric";
      if (!s.eps[i][j].is_integer() && !(s.frozen[i] && s.frozen[j])) return "non-integral entry off I0";
      if (s.frozen[i] && s.frozen[j] && !(s.eps[i][j] == Rational(0))) {
        Rational den(mpq_class(s.eps[i][j].den()));
        if (!frozen_den) frozen_den = den;
        // Word seeds only produce denominators 1 and 2 on I0 x I0.
        if (!(den == *frozen_den) && !(den == Rational(1)) && !(*frozen_den == Rational(1)))
          return "frozen entries with different denominators";
      }
    }
  }
  return {};
}

nlohmann::json rational_matrix_to_json(const std::vector<std::vector<Rational>>& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : m) {
    nlohmann::json row = nlohmann::json::array();
    for (const auto& x : r) row.push_back({std::stoll(x.num().get_str()), std::stoll(x.den().get_str())});
    rows.push_back(row);
  }
  return rows;
}

std::vector<std::vector<Rational>> rational_matrix_from_json(const nlohmann::json& j) {
  std::vector<std::vector<Rational>> m;
  for (const auto& row : j) {
    std::vector<Rational> r;
    for (const auto& x : row) r.emplace_back(x.at(0).get<long long>(), x.at(1).get<long long>());
    m.push_back(r);
  }
  return m;
}

nlohmann::json seed_to_json(const Seed& s) {
  nlohmann::json j;
  auto vx = [&](std::size_t p) {
    const SeedIndex v = s.layout.vertex(p);
    return nlohmann::json::array({v.letter, v.k});
  };
  j["word"] = format_word(s.word);
  j["indices"] = nlohmann::json::array();
  j["frozen"] = nlohmann::json::array();
  j["cover_L"] = nlohmann::json::array();
  j["cover_R"] = nlohmann::json::array();
  for (std::size_t p = 0; p < s.size(); ++p) {
    j["indices"].push_back(vx(p));
    if (s.frozen[p]) j["frozen"].push_back(vx(p));
    if (s.cover_left[p]) j["cover_L"].push_back(vx(p));
    if (s.cover_right[p]) j["cover_R"].push_back(vx(p));
  }
  j["epsilon"] = rational_matrix_to_json(s.eps);
  j["d"] = s.d;
  return j;
}

}  // namespace cdual
