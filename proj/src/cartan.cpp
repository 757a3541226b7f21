#include "cdual/cartan.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace cdual {

namespace {

IntMatrix zero_matrix(int n) { return IntMatrix(n, std::vector<int>(n, 0)); }

void link(IntMatrix& a, int i, int j, int aij, int aji) {
  a[i - 1][j - 1] = aij;
  a[j - 1][i - 1] = aji;
}

IntMatrix mul(const IntMatrix& x, const IntMatrix& y) {
  const int n = static_cast<int>(x.size());
  IntMatrix r = zero_matrix(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      if (x[i][k])
        for (int j = 0; j < n; ++j) r[i][j] += x[i][k] * y[k][j];
  return r;
}

}  // namespace

CartanData build_cartan(char type, int rank) {
  auto bad = [&] { return UnsupportedType("unsupported Cartan type " + std::string(1, type) + std::to_string(rank)); };
  if (rank < 1) throw bad();
  CartanData c;
  c.type = type;
  c.rank = rank;
  c.a = zero_matrix(rank);
  for (int i = 0; i < rank; ++i) c.a[i][i] = 2;
  c.d.assign(rank, 1);
  switch (type) {
    case 'A':
      for (int i = 1; i < rank; ++i) link(c.a, i, i + 1, -1, -1);
      break;
    case 'B':
      if (rank < 2) throw bad();
      for (int i = 1; i + 1 < rank; ++i) link(c.a, i, i + 1, -1, -1);
      link(c.a, rank - 1, rank, -1, -2);
      for (int i = 0; i + 1 < rank; ++i) c.d[i] = 2;
      break;
    case 'C':
      if (rank < 2) throw bad();
      for (int i = 1; i + 1 < rank; ++i) link(c.a, i, i + 1, -1, -1);
      link(c.a, rank - 1, rank, -2, -1);
      c.d[rank - 1] = 2;
      break;
    case 'D':
      if (rank < 4) throw bad();
      for (int i = 1; i + 2 < rank; ++i) link(c.a, i, i + 1, -1, -1);
      link(c.a, rank - 2, rank - 1, -1, -1);
      link(c.a, rank - 2, rank, -1, -1);
      break;
    case 'E':
      if (rank < 6 || rank > 8) throw bad();
      link(c.a, 1, 3, -1, -1);
      link(c.a, 2, 4, -1, -1);
      for (int i = 3; i < rank; ++i) link(c.a, i, i + 1, -1, -1);
      break;
    case 'F':
      if (rank != 4) throw bad();
      link(c.a, 1, 2, -1, -1);
      link(c.a, 2, 3, -2, -1);
      link(c.a, 3, 4, -1, -1);
      c.d = {1, 1, 2, 2};
      break;
    case 'G':
      if (rank != 2) throw bad();
      link(c.a, 1, 2, -1, -3);
      c.d = {3, 1};
      break;
    default:
      throw bad();
  }
  c.m = zero_matrix(rank);
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < rank; ++j) {
      if (i == j) {
        c.m[i][j] = 1;
        continue;
      }
      switch (c.a[i][j] * c.a[j][i]) {
        case 0: c.m[i][j] = 2; break;
        case 1: c.m[i][j] = 3; break;
        case 2: c.m[i][j] = 4; break;
        case 3: c.m[i][j] = 6; break;
        default: throw bad();
      }
      if (c.d[i] * c.a[i][j] != c.d[j] * c.a[j][i]) throw std::logic_error("symmetrizer mismatch");
    }
  return c;
}

CartanData parse_cartan(const std::string& label) {
  if (label.size() < 2 || label[0] < 'A' || label[0] > 'G') throw UnsupportedType("bad Cartan label '" + label + "'");
  int rank = 0;
  try {
    std::size_t used = 0;
    rank = std::stoi(label.substr(1), &used);
    if (used != label.size() - 1) throw std::invalid_argument("trailing");
  } catch (const std::exception&) {
    throw UnsupportedType("bad Cartan label '" + label + "'");
  }
  return build_cartan(label[0], rank);
}

WeylElement WeylElement::identity(const CartanData& c) {
  WeylElement w;
  w.a_ = std::make_shared<const IntMatrix>(c.a);
  w.roots_ = zero_matrix(c.rank);
  for (int i = 0; i < c.rank; ++i) w.roots_[i][i] = 1;
  w.weights_ = w.roots_;
  return w;
}

WeylElement WeylElement::times_simple(int i) const {
  const int n = rank(), k = i - 1;
  const IntMatrix& a = *a_;
  WeylElement r = *this;
  // s_i(alpha_j) = alpha_j - a_ij alpha_i, so column j of w s_i is w(alpha_j) - a_ij w(alpha_i).
  for (int j = 0; j < n; ++j)
    for (int row = 0; row < n; ++row) r.roots_[row][j] = roots_[row][j] - a[k][j] * roots_[row][k];
  // s_i(omega_i) = omega_i - alpha_i with alpha_i = sum_l a_li omega_l.
  for (int row = 0; row < n; ++row) {
    int acc = weights_[row][k];
    for (int l = 0; l < n; ++l) acc -= a[l][k] * weights_[row][l];
    r.weights_[row][k] = acc;
  }
  return r;
}

WeylElement WeylElement::simple(const CartanData& c, int i) {
  if (i < 1 || i > c.rank) throw std::out_of_range("simple reflection index out of range");
  WeylElement w = identity(c).times_simple(i);
  w.word_ = {i};
  return w;
}

WeylElement WeylElement::from_word(const CartanData& c, const std::vector<int>& letters) {
  WeylElement w = identity(c);
  for (int l : letters) {
    if (l < 1 || l > c.rank) throw std::out_of_range("letter " + std::to_string(l) + " out of range");
    w = w.times_simple(l);
  }
  w.recompute_word();
  return w;
}

WeylElement WeylElement::operator*(const WeylElement& o) const {
  WeylElement r = *this;
  r.roots_ = mul(roots_, o.roots_);
  r.weights_ = mul(weights_, o.weights_);
  r.recompute_word();
  return r;
}

WeylElement WeylElement::inverse() const {
  WeylElement r = *this;
  for (int row = 0; row < rank(); ++row)
    for (int col = 0; col < rank(); ++col) r.roots_[row][col] = r.weights_[row][col] = row == col;
  for (auto it = word_.rbegin(); it != word_.rend(); ++it) r = r.times_simple(*it);
  r.recompute_word();
  return r;
}

bool WeylElement::has_right_descent(int i) const {
  for (int row = 0; row < rank(); ++row)
    if (roots_[row][i - 1] < 0) return true;
  return false;
}

void WeylElement::recompute_word() {
  // Strip right descents: each step w -> w s_i lowers the length by exactly one.
  WeylElement cur = *this;
  std::vector<int> rev;
  for (;;) {
    int found = 0;
    for (int i = 1; i <= rank() && !found; ++i)
      if (cur.has_right_descent(i)) found = i;
    if (!found) break;
    rev.push_back(found);
    cur = cur.times_simple(found);
  }
  word_.assign(rev.rbegin(), rev.rend());
}

std::vector<int> WeylElement::act_on_weight(const std::vector<int>& coords) const {
  std::vector<int> out(rank(), 0);
  for (int r = 0; r < rank(); ++r)
    for (int c = 0; c < rank(); ++c) out[r] += weights_[r][c] * coords[c];
  return out;
}

std::vector<int> WeylElement::act_on_root(const std::vector<int>& coords) const {
  std::vector<int> out(rank(), 0);
  for (int r = 0; r < rank(); ++r)
    for (int c = 0; c < rank(); ++c) out[r] += roots_[r][c] * coords[c];
  return out;
}

bool is_reduced(const CartanData& c, const std::vector<int>& letters) {
  return WeylElement::from_word(c, letters).length() == static_cast<int>(letters.size());
}

namespace {
void collect_reduced(const CartanData& c, const WeylElement& w, std::map<WeylElement, std::set<std::vector<int>>>& memo) {
  if (memo.count(w)) return;
  std::set<std::vector<int>> out;
  if (w.is_identity()) {
    out.insert(std::vector<int>{});  // not insert({}), which inserts nothing
  } else {
    for (int i = 1; i <= c.rank; ++i) {
      if (!w.has_right_descent(i)) continue;
      const WeylElement p = w * WeylElement::simple(c, i);
      collect_reduced(c, p, memo);
      for (auto word : memo.at(p)) {
        word.push_back(i);
        out.insert(word);
      }
    }
  }
  memo.emplace(w, std::move(out));
}
}  // namespace

std::set<std::vector<int>> reduced_words(const CartanData& c, const WeylElement& w) {
  std::map<WeylElement, std::set<std::vector<int>>> memo;
  collect_reduced(c, w, memo);
  return memo.at(w);
}

WeylElement longest_element(const CartanData& c, const std::set<int>& I) {
  WeylElement w = WeylElement::identity(c);
  for (bool grew = true; grew;) {
    grew = false;
    for (int i : I) {
      if (i < 1 || i > c.rank) throw std::out_of_range("subset letter out of range");
      if (!w.has_right_descent(i)) {
        w = w * WeylElement::simple(c, i);
        grew = true;
      }
    }
  }
  return w;
}

WeylElement longest_element(const CartanData& c) {
  std::set<int> all;
  for (int i = 1; i <= c.rank; ++i) all.insert(i);
  return longest_element(c, all);
}

std::vector<int> star_involution(const CartanData& c) {
  const WeylElement w0 = longest_element(c);
  std::vector<int> st(c.rank + 1, 0);
  const IntMatrix& m = w0.weight_action();
  for (int i = 0; i < c.rank; ++i)
    for (int r = 0; r < c.rank; ++r)
      if (m[r][i] == -1) st[i + 1] = r + 1;
  return st;
}

WeylElement star(const CartanData& c, const WeylElement& w) {
  const WeylElement w0 = longest_element(c);
  return w0 * w * w0;
}

std::vector<WeylElement> enumerate_group(const CartanData& c) {
  std::set<WeylElement> seen;
  std::vector<WeylElement> order;
  std::deque<WeylElement> q;
  const WeylElement e = WeylElement::identity(c);
  seen.insert(e);
  q.push_back(e);
  while (!q.empty()) {
    WeylElement w = q.front();
    q.pop_front();
    order.push_back(w);
    for (int i = 1; i <= c.rank; ++i) {
      WeylElement n = w * WeylElement::simple(c, i);
      if (seen.insert(n).second) q.push_back(n);
    }
  }
  return order;
}

std::size_t count_positive_roots(const CartanData& c) {
  std::set<std::vector<int>> roots;
  for (const auto& w : enumerate_group(c))
    for (int i = 0; i < c.rank; ++i) {
      std::vector<int> e(c.rank, 0);
      e[i] = 1;
      roots.insert(w.act_on_root(e));
    }
  std::size_t pos = 0;
  for (const auto& r : roots) pos += std::all_of(r.begin(), r.end(), [](int x) { return x >= 0; });
  return pos;
}

}  // namespace cdual
