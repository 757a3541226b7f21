#pragma once

#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace cdual {

using IntMatrix = std::vector<std::vector<int>>;
using Word = std::vector<int>;  // signed letters: i > 0 plain, -i barred

struct UnsupportedType : std::invalid_argument {
  explicit UnsupportedType(const std::string& what) : std::invalid_argument(what) {}
};

struct CartanData {
  char type = 'A';
  int rank = 0;
  IntMatrix a;         // a[i][j] = a_ij, 0-based
  std::vector<int> d;  // D*A symmetric
  IntMatrix m;         // move orders, m[i][i] = 1

  std::string label() const { return std::string(1, type) + std::to_string(rank); }
  int a_ij(int i, int j) const { return a[i - 1][j - 1]; }  // 1-based letters
  int d_i(int i) const { return d[i - 1]; }
  int move_order(int i, int j) const { return m[i - 1][j - 1]; }
  bool is_type_a() const { return type == 'A'; }
};

CartanData build_cartan(char type, int rank);
// Parses labels such as "A2", "G2".
CartanData parse_cartan(const std::string& label);

// Weyl group element, stored as its integer action on the simple-root basis
// (column i is w(alpha_i)) and on the fundamental-weight basis.
class WeylElement {
 public:
  WeylElement() = default;
  static WeylElement identity(const CartanData& c);
  static WeylElement simple(const CartanData& c, int i);
  static WeylElement from_word(const CartanData& c, const std::vector<int>& letters);  // s_{l1} s_{l2} ...

  int rank() const { return static_cast<int>(roots_.size()); }
  const IntMatrix& root_action() const { return roots_; }
  const IntMatrix& weight_action() const { return weights_; }

  WeylElement operator*(const WeylElement& o) const;
  WeylElement inverse() const;
  bool operator==(const WeylElement& o) const { return roots_ == o.roots_; }
  bool operator<(const WeylElement& o) const { return roots_ < o.roots_; }

  // w(alpha_i) < 0, i.e. l(w s_i) < l(w).
  bool has_right_descent(int i) const;
  int length() const { return static_cast<int>(word_.size()); }
  // Reduced word from greedy descent, cached at construction.
  const std::vector<int>& reduced_word() const { return word_; }
  bool is_identity() const { return word_.empty(); }

  std::vector<int> act_on_weight(const std::vector<int>& coords) const;
  std::vector<int> act_on_root(const std::vector<int>& coords) const;

 private:
  std::shared_ptr<const IntMatrix> a_;
  IntMatrix roots_, weights_;
  std::vector<int> word_;
  void recompute_word();
  WeylElement times_simple(int i) const;
};

bool is_reduced(const CartanData& c, const std::vector<int>& letters);

// Every minimal-length expression; exponential in l(w).
std::set<std::vector<int>> reduced_words(const CartanData& c, const WeylElement& w);

// Longest element of the parabolic subgroup W_I; the full set gives w0.
WeylElement longest_element(const CartanData& c, const std::set<int>& I);
WeylElement longest_element(const CartanData& c);

// i -> i* where omega_{i*} = -w0(omega_i); index 0 unused.
std::vector<int> star_involution(const CartanData& c);
// w* = w0 w w0.
WeylElement star(const CartanData& c, const WeylElement& w);

// All group elements; exponential in rank.
std::vector<WeylElement> enumerate_group(const CartanData& c);
std::size_t count_positive_roots(const CartanData& c);

}  // namespace cdual
