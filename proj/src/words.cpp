#include "cdual/words.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace cdual {

Word parse_word(const std::string& text) {
  Word w;
  if (text.find_first_not_of(" \t") == std::string::npos) return w;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad letter '" + item + "' in word '" + text + "'");
    }
    if (item.find_first_not_of(" \t", used) != std::string::npos || v == 0)
      throw std::invalid_argument("bad letter '" + item + "' in word '" + text + "'");
    w.push_back(v);
  }
  return w;
}

std::string format_word(const Word& w) {
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(w[i]);
  }
  return s;
}

std::vector<int> positive_letters(const Word& w) {
  std::vector<int> out;
  for (int l : w)
    if (l > 0) out.push_back(l);
  return out;
}

std::vector<int> negative_letters(const Word& w) {
  std::vector<int> out;
  for (int l : w)
    if (l < 0) out.push_back(-l);
  return out;
}

int count_letter(const Word& w, int i, std::size_t end) {
  int n = 0;
  for (std::size_t q = 0; q < end && q < w.size(); ++q) n += letter_index(w[q]) == i;
  return n;
}

int count_letter(const Word& w, int i) { return count_letter(w, i, w.size()); }

void check_alphabet(const CartanData& c, const Word& w) {
  for (int l : w)
    if (l == 0 || letter_index(l) > c.rank)
      throw std::invalid_argument("letter " + std::to_string(l) + " outside the alphabet of " + c.label());
}

Classification classify(const CartanData& c, const Word& w) {
  check_alphabet(c, w);
  Classification r;
  const auto neg = negative_letters(w), pos = positive_letters(w);
  r.u = WeylElement::from_word(c, neg);
  r.v = WeylElement::from_word(c, pos);
  r.reduced = r.u.length() == static_cast<int>(neg.size()) && r.v.length() == static_cast<int>(pos.size());
  return r;
}

std::string move_kind_name(MoveKind k) {
  switch (k) {
    case MoveKind::PositiveD: return "positive_d";
    case MoveKind::NegativeD: return "negative_d";
    case MoveKind::Mixed2: return "mixed2";
    case MoveKind::TauLeft: return "tau_left";
    case MoveKind::TauRight: return "tau_right";
    case MoveKind::Dual: return "dual";
  }
  return "?";
}

std::optional<MoveKind> parse_move_kind(const std::string& name) {
  for (MoveKind k : {MoveKind::PositiveD, MoveKind::NegativeD, MoveKind::Mixed2, MoveKind::TauLeft,
                     MoveKind::TauRight, MoveKind::Dual})
    if (move_kind_name(k) == name) return k;
  return std::nullopt;
}

WordContext::WordContext(CartanData c)
    : c_(std::move(c)), w0_(longest_element(c_)), star_(star_involution(c_)) {}

std::set<MoveKind> WordContext::all_moves() {
  return {MoveKind::PositiveD, MoveKind::NegativeD, MoveKind::Mixed2,
          MoveKind::TauLeft,   MoveKind::TauRight,  MoveKind::Dual};
}

std::set<MoveKind> WordContext::dhat_moves() {
  return {MoveKind::PositiveD, MoveKind::NegativeD, MoveKind::Mixed2, MoveKind::TauRight, MoveKind::Dual};
}

bool WordContext::is_w0_block(const Word& block, bool plain) const {
  if (static_cast<int>(block.size()) != w0_length()) return false;
  std::vector<int> letters;
  for (int l : block) {
    if (is_plain(l) != plain) return false;
    letters.push_back(letter_index(l));
  }
  return is_reduced(c_, letters);
}

Word WordContext::apply_move(const Word& w, MoveKind kind, std::size_t q) const {
  check_alphabet(c_, w);
  const std::size_t L = w.size();
  auto fail = [&](const std::string& why) {
    return InapplicableMove(move_kind_name(kind) + " at " + std::to_string(q) + " on '" + format_word(w) + "': " + why);
  };
  Word out = w;
  switch (kind) {
    case MoveKind::Mixed2:
      if (q + 1 >= L) throw fail("position out of range");
      if (is_plain(w[q]) == is_plain(w[q + 1])) throw fail("letters have the same sign");
      std::swap(out[q], out[q + 1]);
      return out;
    case MoveKind::PositiveD:
    case MoveKind::NegativeD: {
      const bool plain = kind == MoveKind::PositiveD;
      if (q + 1 >= L) throw fail("position out of range");
      const int a = w[q], b = w[q + 1];
      if (is_plain(a) != plain || is_plain(b) != plain) throw fail("letters of the wrong sign");
      if (a == b) throw fail("repeated letter");
      const std::size_t m = c_.move_order(letter_index(a), letter_index(b));
      if (q + m > L) throw fail("block of length " + std::to_string(m) + " does not fit");
      for (std::size_t t = 0; t < m; ++t)
        if (w[q + t] != (t % 2 ? b : a)) throw fail("letters do not alternate");
      for (std::size_t t = 0; t < m; ++t) out[q + t] = t % 2 ? a : b;
      return out;
    }
    case MoveKind::TauLeft:
      if (L == 0 || q != 0) throw fail("left tau-move acts on the first letter");
      out[0] = -out[0];
      return out;
    case MoveKind::TauRight:
      if (L == 0 || q != L - 1) throw fail("right tau-move acts on the last letter");
      out[L - 1] = -out[L - 1];
      return out;
    case MoveKind::Dual: {
      const std::size_t m = w0_length();
      if (L < m + 1 || q != L - m - 1) throw fail("needs one letter followed by a w0-block");
      const int a = w[q];
      const Word block(w.begin() + q + 1, w.end());
      if (!is_w0_block(block, !is_plain(a))) throw fail("suffix is not a w0-block of the opposite sign");
      out.resize(q);
      out.push_back(is_plain(a) ? -star_letter(a) : star_letter(-a));
      for (int l : square_word(block)) out.push_back(l);
      return out;
    }
  }
  throw fail("unknown move");
}

std::vector<Move> WordContext::applicable_moves(const Word& w, const std::set<MoveKind>& allowed) const {
  std::vector<Move> out;
  auto attempt = [&](MoveKind k, std::size_t q) {
    if (!allowed.count(k)) return;
    try {
      out.push_back(Move{k, q, w, apply_move(w, k, q)});
    } catch (const InapplicableMove&) {
    }
  };
  const std::size_t L = w.size();
  for (std::size_t q = 0; q + 1 < L; ++q) attempt(MoveKind::Mixed2, q);
  for (std::size_t q = 0; q + 1 < L; ++q) {
    attempt(MoveKind::PositiveD, q);
    attempt(MoveKind::NegativeD, q);
  }
  if (L) {
    attempt(MoveKind::TauLeft, 0);
    attempt(MoveKind::TauRight, L - 1);
  }
  if (L > static_cast<std::size_t>(w0_length())) attempt(MoveKind::Dual, L - w0_length() - 1);
  return out;
}

std::vector<Move> WordContext::move_path(const Word& from, const Word& to, const std::set<MoveKind>& allowed) const {
  std::map<Word, std::optional<Move>> prev;
  std::deque<Word> q;
  prev.emplace(from, std::nullopt);
  q.push_back(from);
  while (!q.empty()) {
    Word w = q.front();
    q.pop_front();
    if (w == to) {
      std::vector<Move> path;
      for (Word cur = w; prev.at(cur);) {
        path.push_back(*prev.at(cur));
        cur = path.back().before;
      }
      std::reverse(path.begin(), path.end());
      return path;
    }
    for (auto& m : applicable_moves(w, allowed))
      if (!prev.count(m.after)) {
        prev.emplace(m.after, m);
        q.push_back(m.after);
      }
  }
  throw NoPath("no move chain from '" + format_word(from) + "' to '" + format_word(to) + "'");
}

Word WordContext::star_word(const Word& w) const {
  Word out;
  for (int l : w) out.push_back(is_plain(l) ? -star_letter(l) : star_letter(-l));
  return out;
}

std::vector<WordContext::TrivialDecomposition> WordContext::trivial_decompositions(const Word& w) const {
  check_alphabet(c_, w);
  std::vector<TrivialDecomposition> out;
  for (std::size_t p = 0; p <= w.size(); ++p) {
    const Word i1(w.begin(), w.begin() + p), i2(w.begin() + p, w.end());
    const auto n1 = negative_letters(i1), p1 = positive_letters(i1);
    const auto n2 = negative_letters(i2), p2 = positive_letters(i2);
    if (!is_reduced(c_, n1) || !is_reduced(c_, p1) || !is_reduced(c_, n2) || !is_reduced(c_, p2)) continue;
    const WeylElement u1 = WeylElement::from_word(c_, n1);
    const WeylElement w1 = star(c_, u1.inverse());
    const WeylElement v = WeylElement::from_word(c_, p1) * w1;
    if (v.length() != static_cast<int>(p1.size()) + w1.length()) continue;
    const WeylElement w2 = WeylElement::from_word(c_, n2).inverse();
    if (!(WeylElement::from_word(c_, p2) == w0_ * w2.inverse())) continue;
    out.push_back(TrivialDecomposition{p, v, w1, w2});
  }
  return out;
}

Word WordContext::trivial_vword(const WeylElement& w1, const WeylElement& w2, const WeylElement& v) const {
  const WeylElement head = v * w1.inverse();
  if (head.length() + w1.length() != v.length()) throw PreconditionFailed("w1 is not below v in the right weak order");
  Word out;
  const WeylElement u1 = star(c_, w1).inverse();
  for (int l : u1.reduced_word()) out.push_back(-l);
  for (int l : head.reduced_word()) out.push_back(l);
  for (int l : w2.inverse().reduced_word()) out.push_back(-l);
  for (int l : (w0_ * w2.inverse()).reduced_word()) out.push_back(l);
  return out;
}

const std::set<std::pair<WeylElement, WeylElement>>& WordContext::classes(const Word& w) const {
  auto it = class_cache_.find(w);
  if (it != class_cache_.end()) return it->second;
  std::set<std::pair<WeylElement, WeylElement>> out;
  std::set<Word> seen{w};
  std::deque<Word> q{w};
  while (!q.empty()) {
    Word u = q.front();
    q.pop_front();
    for (const auto& d : trivial_decompositions(u)) out.emplace(d.v, d.w1);
    for (std::size_t p = 0; p + 1 < u.size(); ++p) {
      if (is_plain(u[p]) == is_plain(u[p + 1])) continue;
      Word n = u;
      std::swap(n[p], n[p + 1]);
      if (seen.insert(n).second) q.push_back(n);
    }
  }
  // Every word in the mixed-swap class shares the same answer.
  for (const auto& u : seen) class_cache_[u] = out;
  return class_cache_.at(w);
}

std::optional<WordContext::Witness> WordContext::membership(const Word& w, const WeylElement& v,
                                                            const WeylElement& w1) const {
  std::map<Word, std::pair<Word, std::size_t>> prev;
  std::deque<Word> q{w};
  std::set<Word> seen{w};
  // The mixed-swap class is a set of shuffles, so the search is finite.
  while (!q.empty()) {
    Word u = q.front();
    q.pop_front();
    for (const auto& d : trivial_decompositions(u)) {
      if (!(d.v == v) || !(d.w1 == w1)) continue;
      Witness wit;
      wit.trivial = u;
      wit.decomposition = d;
      for (Word cur = u; cur != w;) {
        const auto& [p, pos] = prev.at(cur);
        wit.swaps.push_back(pos);
        cur = p;
      }
      std::reverse(wit.swaps.begin(), wit.swaps.end());
      return wit;
    }
    for (std::size_t p = 0; p + 1 < u.size(); ++p) {
      if (is_plain(u[p]) == is_plain(u[p + 1])) continue;
      Word n = u;
      std::swap(n[p], n[p + 1]);
      if (seen.insert(n).second) {
        prev.emplace(n, std::make_pair(u, p));
        q.push_back(n);
      }
    }
  }
  return std::nullopt;
}

std::vector<std::pair<WordContext::State, WordContext::Edge>> WordContext::dhat_neighbors(
    const State& s, const WeylElement& v, const std::set<MoveKind>& allowed) const {
  std::vector<std::pair<State, Edge>> out;
  std::set<MoveKind> word_moves = allowed;
  word_moves.erase(MoveKind::TauLeft);
  for (const auto& m : applicable_moves(s.word, word_moves)) {
    Edge e{m.kind, m.position, false};
    WeylElement nw1 = s.w1;
    if (m.kind == MoveKind::Dual) {
      const int a = s.word[m.position];
      e.inverse_dual = is_plain(a);
      const int k = is_plain(a) ? a : star_letter(-a);
      nw1 = WeylElement::simple(c_, k) * s.w1;
      // A saltation lowers w1; its inverse raises it.
      if ((nw1.length() < s.w1.length()) == e.inverse_dual) continue;
    }
    if (!classes(m.after).count({v, nw1})) continue;
    out.emplace_back(State{m.after, nw1}, e);
  }
  return out;
}

std::vector<std::pair<WordContext::State, WordContext::Edge>> WordContext::dhat_path(
    const State& from, const State& to, const WeylElement& v, const std::set<MoveKind>& allowed) const {
  std::map<State, std::optional<std::pair<State, Edge>>> prev;
  std::deque<State> q{from};
  prev.emplace(from, std::nullopt);
  while (!q.empty()) {
    State s = q.front();
    q.pop_front();
    if (s == to) {
      std::vector<std::pair<State, Edge>> path;
      for (State cur = s; prev.at(cur);) {
        path.push_back(*prev.at(cur));
        cur = path.back().first;
      }
      std::reverse(path.begin(), path.end());
      return path;
    }
    for (auto& [n, e] : dhat_neighbors(s, v, allowed))
      if (!prev.count(n)) {
        prev.emplace(n, std::make_pair(s, e));
        q.push_back(n);
      }
  }
  throw NoPath("no d-hat chain from '" + format_word(from.word) + "' to '" + format_word(to.word) + "'");
}

std::vector<WordContext::State> WordContext::dhat_component(const State& from, const WeylElement& v,
                                                            const std::set<MoveKind>& allowed) const {
  std::set<State> seen{from};
  std::deque<State> q{from};
  std::vector<State> order;
  while (!q.empty()) {
    State s = q.front();
    q.pop_front();
    order.push_back(s);
    for (auto& [n, e] : dhat_neighbors(s, v, allowed))
      if (seen.insert(n).second) q.push_back(n);
  }
  return order;
}

Word section_word(const Word& w, std::size_t k) {
  const std::size_t n = w.size();
  if (k < 1 || k > n + 1) throw PreconditionFailed("section index out of range");
  const bool plain = std::all_of(w.begin(), w.end(), is_plain);
  const bool barred = std::none_of(w.begin(), w.end(), is_plain);
  if (!plain && !barred) throw PreconditionFailed("section needs a purely plain or purely barred word");
  Word out;
  if (plain) {
    for (std::size_t t = n; t >= k; --t) out.push_back(-w[t - 1]);
    for (std::size_t t = 1; t < k; ++t) out.push_back(w[t - 1]);
  } else {
    for (std::size_t t = k; t <= n; ++t) out.push_back(w[t - 1]);
    for (std::size_t t = k - 1; t >= 1; --t) out.push_back(-w[t - 1]);
  }
  return out;
}

Word square_word(const Word& w) {
  Word out;
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(-*it);
  return out;
}

Word left_tau_word(const Word& w) {
  if (w.empty()) throw PreconditionFailed("left tau-move on the empty word");
  Word out = w;
  out[0] = -out[0];
  return out;
}

}  // namespace cdual
