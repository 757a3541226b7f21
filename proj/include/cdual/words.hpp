#pragma once

#include "cdual/cartan.hpp"

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace cdual {

struct InapplicableMove : std::invalid_argument {
  explicit InapplicableMove(const std::string& what) : std::invalid_argument(what) {}
};
struct NoPath : std::runtime_error {
  explicit NoPath(const std::string& what) : std::runtime_error(what) {}
};
struct PreconditionFailed : std::invalid_argument {
  explicit PreconditionFailed(const std::string& what) : std::invalid_argument(what) {}
};

// "1,-1" <-> {1,-1}; the empty string is the empty word.
Word parse_word(const std::string& text);
std::string format_word(const Word& w);

inline int letter_index(int letter) { return letter > 0 ? letter : -letter; }
inline bool is_plain(int letter) { return letter > 0; }

std::vector<int> positive_letters(const Word& w);
std::vector<int> negative_letters(const Word& w);  // as plain indices
// Occurrences of letter index i among w[0..end).
int count_letter(const Word& w, int i, std::size_t end);
int count_letter(const Word& w, int i);
void check_alphabet(const CartanData& c, const Word& w);

struct Classification {
  bool reduced = false;
  WeylElement u, v;  // u from the barred letters, v from the plain ones
};
Classification classify(const CartanData& c, const Word& w);

enum class MoveKind { PositiveD, NegativeD, Mixed2, TauLeft, TauRight, Dual };
std::string move_kind_name(MoveKind k);
std::optional<MoveKind> parse_move_kind(const std::string& name);

struct Move {
  MoveKind kind;
  std::size_t position = 0;
  Word before, after;
};

// Word-level combinatorics that needs the Weyl group and caches class data.
// Not safe for concurrent use; make one per thread.
class WordContext {
 public:
  explicit WordContext(CartanData c);

  const CartanData& cartan() const { return c_; }
  const WeylElement& w0() const { return w0_; }
  int w0_length() const { return w0_.length(); }
  int star_letter(int i) const { return star_[i]; }

  Word apply_move(const Word& w, MoveKind kind, std::size_t position) const;
  std::vector<Move> applicable_moves(const Word& w, const std::set<MoveKind>& allowed) const;
  // Shortest chain by BFS; throws NoPath when the target is not in the component.
  std::vector<Move> move_path(const Word& from, const Word& to, const std::set<MoveKind>& allowed) const;

  bool is_w0_block(const Word& block, bool plain) const;

  // Letterwise i -> bar(i*); maps R(u,v) to R(v*,u*).
  Word star_word(const Word& w) const;

  struct TrivialDecomposition {
    std::size_t split = 0;  // word = i1 i2 with |i1| = split
    WeylElement v, w1, w2;
  };
  std::vector<TrivialDecomposition> trivial_decompositions(const Word& w) const;
  // A fixed trivial (w1,w2)_v-word; requires w1 <= v in the right weak order.
  Word trivial_vword(const WeylElement& w1, const WeylElement& w2, const WeylElement& v) const;

  // All (v, w1) such that the word lies in D_{w1}(v).
  const std::set<std::pair<WeylElement, WeylElement>>& classes(const Word& w) const;

  struct Witness {
    std::vector<std::size_t> swaps;  // mixed 2-moves applied in order, by position
    Word trivial;
    TrivialDecomposition decomposition;
  };
  std::optional<Witness> membership(const Word& w, const WeylElement& v, const WeylElement& w1) const;

  // States of the d-hat move graph at fixed v: a word together with its w1.
  struct State {
    Word word;
    WeylElement w1;
    bool operator<(const State& o) const { return std::tie(word, w1) < std::tie(o.word, o.w1); }
    bool operator==(const State& o) const { return word == o.word && w1 == o.w1; }
  };
  struct Edge {
    MoveKind kind;
    std::size_t position;
    bool inverse_dual = false;  // Dual from a plain letter before a barred w0-block
  };
  std::vector<std::pair<State, Edge>> dhat_neighbors(const State& s, const WeylElement& v,
                                                     const std::set<MoveKind>& allowed) const;
  std::vector<std::pair<State, Edge>> dhat_path(const State& from, const State& to, const WeylElement& v,
                                                const std::set<MoveKind>& allowed) const;
  // Connected component in BFS order.
  std::vector<State> dhat_component(const State& from, const WeylElement& v, const std::set<MoveKind>& allowed) const;

  static std::set<MoveKind> all_moves();
  static std::set<MoveKind> dhat_moves();  // generalized d-moves, right tau-moves, dual moves

 private:
  CartanData c_;
  WeylElement w0_;
  std::vector<int> star_;
  mutable std::map<Word, std::set<std::pair<WeylElement, WeylElement>>> class_cache_;
};

// i(k) = bar(i_n)...bar(i_k) i_1...i_{k-1} for a plain reduced word, k in [1, n+1];
// j(k) = bar(j_k)...bar(j_n) j_{k-1}...j_1 for a barred reduced word.
Word section_word(const Word& w, std::size_t k);
// i(1) for plain words, j(n+1) for barred words: reverse and bar.
Word square_word(const Word& w);
// Left tau-move on the first letter.
Word left_tau_word(const Word& w);

}  // namespace cdual
