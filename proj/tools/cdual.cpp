// Command-line front end: identity suites, single computations, move-graph queries.
// Exit codes: 0 pass, 1 identity failure or missing path, 2 configuration error.

#include "cdual/checks.hpp"
#include "cdual/evals.hpp"
#include "cdual/group.hpp"
#include "cdual/maps.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace cdual;
using nlohmann::json;

namespace {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string type = "A1";
  std::size_t trials = 50;
  std::uint64_t prime = (1ULL << 61) - 1;
  std::uint64_t rng_seed = 1;
  std::string out, format = "text", level;
  bool allow_small_prime = false, timing = false, all = false;
  std::string identity;
  std::vector<std::string> words;
  std::string word, from, to, point, index, side, v, w1, to_w1, moves = "all";
  int j = 1;
  std::size_t position = 0;
};

std::vector<Rational> parse_point(const std::string& s) {
  std::vector<Rational> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(Rational::parse(item));
  return out;
}

SeedIndex parse_index(const std::string& s) {
  const auto colon = s.find(':');
  if (colon == std::string::npos) throw ConfigError("index must look like i:k, got '" + s + "'");
  try {
    return SeedIndex{std::stoi(s.substr(0, colon)), std::stoi(s.substr(colon + 1))};
  } catch (const std::exception&) {
    throw ConfigError("index must look like i:k, got '" + s + "'");
  }
}

WeylElement parse_element(const CartanData& c, const std::string& s) {
  if (s.empty() || s == "e") return WeylElement::identity(c);
  const Word w = parse_word(s);
  for (int l : w)
    if (l < 1 || l > c.rank) throw ConfigError("group element words use letters 1.." + std::to_string(c.rank));
  return WeylElement::from_word(c, w);
}

json element_json(const WeylElement& w) { return w.reduced_word(); }

json point_json(const std::vector<Rational>& p) {
  json j = json::array();
  for (const auto& x : p) j.push_back(to_string(x));
  return j;
}

json matrix_json(const Matrix<Rational>& m) {
  json j = json::array();
  for (std::size_t r = 0; r < m.n; ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.n; ++c) row.push_back(to_string(m(r, c)));
    j.push_back(row);
  }
  return j;
}

// Rescales to determinant one when the determinant has a rational N-th root, with the first
// nonzero entry positive; otherwise the matrix is returned unchanged.
std::pair<Matrix<Rational>, bool> sl_normalize(Matrix<Rational> m) {
  const Rational det = determinant(m);
  if (is_zero(det)) return {m, false};
  const unsigned long N = m.n;
  mpz_class num = det.raw().get_num(), den = det.raw().get_den();
  bool negative = num < 0;
  if (negative) {
    if (N % 2 == 0) return {m, false};
    num = -num;
  }
  mpz_class rn, rd;
  if (!mpz_root(rn.get_mpz_t(), num.get_mpz_t(), N) || !mpz_root(rd.get_mpz_t(), den.get_mpz_t(), N)) return {m, false};
  Rational scale(mpq_class(rd, rn));
  if (negative) scale = -scale;
  for (auto& x : m.a) x = x * scale;
  for (const auto& x : m.a)
    if (!is_zero(x)) {
      if (x < Rational(0))
        for (auto& y : m.a) y = -y;
      break;
    }
  return {m, true};
}

void emit(const Options& o, const json& j, const std::string& text) {
  if (!o.out.empty()) {
    std::ofstream f(o.out);
    if (!f) throw ConfigError("cannot write '" + o.out + "'");
    f << j.dump(2) << "\n";
  }
  if (o.format == "json")
    std::cout << j.dump(2) << "\n";
  else
    std::cout << text;
}

TrialConfig trial_config(const Options& o) {
  TrialConfig cfg;
  cfg.trials = o.trials;
  cfg.prime = o.prime;
  cfg.rng_seed = o.rng_seed;
  cfg.allow_small_prime = o.allow_small_prime;
  if (const char* env = std::getenv("CLUSTER_DUAL_SEED")) {
    try {
      cfg.rng_seed = std::stoull(env);
    } catch (const std::exception&) {
      throw ConfigError("CLUSTER_DUAL_SEED must be an unsigned integer");
    }
  }
  cfg.validate();
  return cfg;
}

std::string report_text(const CheckReport& r) {
  std::ostringstream os;
  os << r.name << " " << r.cartan_type << " [" << r.level << "]: " << (r.passed() ? "PASS" : "FAIL") << "  ("
     << r.instances.size() << " instances, " << r.trials << " trials, " << r.skipped << " skipped";
  if (r.elapsed_ms) os << ", " << *r.elapsed_ms << " ms";
  os << ")\n";
  for (const auto& f : r.failures) {
    os << "  counterexample: " << f.label << "\n    point:";
    for (const auto& p : f.point) os << " " << p;
    os << "\n";
  }
  for (const auto& n : r.notes) os << "  note: " << n << "\n";
  return os.str();
}

int cmd_verify(const Options& o) {
  CheckOptions co;
  co.cartan_type = o.type;
  co.trials = trial_config(o);
  co.timing = o.timing;
  if (!o.level.empty()) {
    co.level = parse_level(o.level);
    if (!co.level) throw ConfigError("level must be seed or matrix");
  }
  for (const auto& w : o.words) co.words.push_back(parse_word(w));
  if (o.all) {
    const SuiteResult s = check_all(co);
    std::string text;
    for (const auto& r : s.reports) text += report_text(r);
    for (const auto& [n, why] : s.not_applicable) text += n + ": not applicable (" + why + ")\n";
    text += std::string("suite: ") + (s.passed() ? "PASS" : "FAIL") + "\n";
    emit(o, s.to_json(), text);
    return s.passed() ? 0 : 1;
  }
  if (o.identity.empty()) throw ConfigError("verify needs an identity name or --all");
  const CheckReport r = check_identity(o.identity, co);
  emit(o, r.to_json(), report_text(r));
  return r.passed() ? 0 : 1;
}

// The class with the longest w1 (then the longest v) among those containing the word.
std::pair<WeylElement, WeylElement> default_class(const WordContext& ctx, const Word& w) {
  const auto& cls = ctx.classes(w);
  if (cls.empty()) throw ConfigError("'" + format_word(w) + "' lies in no class D_w1(v)");
  auto best = *cls.begin();
  for (const auto& c : cls)
    if (std::make_pair(c.second.length(), c.first.length()) > std::make_pair(best.second.length(), best.first.length()))
      best = c;
  return best;
}

std::pair<WeylElement, WeylElement> chosen_class(const WordContext& ctx, const Options& o, const Word& w) {
  auto [v, w1] = default_class(ctx, w);
  if (!o.v.empty()) v = parse_element(ctx.cartan(), o.v);
  if (!o.w1.empty()) w1 = parse_element(ctx.cartan(), o.w1);
  return {v, w1};
}

std::vector<Rational> require_point(const Options& o, std::size_t dim) {
  if (o.point.empty()) throw ConfigError("--point is required");
  auto p = parse_point(o.point);
  if (p.size() != dim)
    throw ConfigError("point has " + std::to_string(p.size()) + " coordinates, the torus has " + std::to_string(dim));
  return p;
}

std::string point_text(const std::vector<Rational>& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? ", " : "") + to_string(p[i]);
  return s + ")\n";
}

std::string matrix_text(const Matrix<Rational>& m) {
  std::string s;
  for (std::size_t r = 0; r < m.n; ++r) {
    s += "[";
    for (std::size_t c = 0; c < m.n; ++c) s += (c ? ", " : "") + to_string(m(r, c));
    s += "]\n";
  }
  return s;
}

// Applies a map to --point when given, otherwise prints the pipeline.
void emit_map(const Options& o, const RationalMap& m, json j) {
  j["source_word"] = format_word(m.source());
  j["target_word"] = format_word(m.target());
  j["pipeline"] = m.to_json();
  std::string text = format_word(m.source()) + " -> " + format_word(m.target()) + ", " + std::to_string(m.steps().size()) +
                     " steps\n";
  if (!o.point.empty()) {
    const auto p = require_point(o, Layout::of(m.source(), m.rank()).size());
    const auto y = m.apply(p);
    j["point"] = point_json(p);
    j["image"] = point_json(y);
    text = point_text(y);
  }
  emit(o, j, text);
}

int cmd_compute(const std::string& what, const Options& o) {
  const CartanData c = parse_cartan(o.type);
  const WordContext ctx(c);
  const Word w = parse_word(o.word);
  check_alphabet(c, w);
  const Layout L = Layout::of(w, c.rank);
  if (what == "seed") {
    const Seed s = seed_for_word(c, w);
    json j = seed_to_json(s);
    j["eta"] = rational_matrix_to_json(bracket_seed(s).eps);
    std::string text = "eta(" + format_word(w) + "):\n";
    for (const auto& row : bracket_seed(s).eps) {
      for (const auto& x : row) text += " " + to_string(x);
      text += "\n";
    }
    emit(o, j, text);
  } else if (what == "mutate" || what == "tropical") {
    if (o.index.empty()) throw ConfigError("--index i:k is required");
    const Seed s = seed_for_word(c, w);
    const std::size_t k = L.index(parse_index(o.index));
    json j;
    if (what == "mutate") {
      j["seed"] = seed_to_json(mutate_seed(s, k));
      emit_map(o, mutation_map(s, k), j);
    } else {
      std::optional<Side> side;
      if (o.side == "left") side = Side::Left;
      if (o.side == "right") side = Side::Right;
      if (!o.side.empty() && !side) throw ConfigError("side must be left or right");
      j["seed"] = seed_to_json(tropical_mutate_seed(s, k, side));
      emit_map(o, tropical_map(s, k, side), j);
    }
  } else if (what == "ev" || what == "ev-hat") {
    if (!is_type_a_matrix_layer(c)) throw UnsupportedForType("evaluations need type A");
    const auto p = require_point(o, L.size());
    json j{{"word", format_word(w)}, {"point", point_json(p)}};
    Matrix<Rational> m;
    if (what == "ev") {
      m = ev(c.rank, w, p);
    } else {
      const auto [v, w1] = chosen_class(ctx, o, w);
      m = ev_hat(make_ev_hat_plan(ctx, w, v, w1), p);
      j["v"] = element_json(v);
      j["w1"] = element_json(w1);
    }
    const auto [n, sl] = sl_normalize(m);
    j["matrix"] = matrix_json(n);
    j["normalization"] = sl ? "determinant one" : "raw";
    emit(o, j, matrix_text(n));
  } else if (what == "artin-T") {
    const WeylElement w1 = o.w1.empty() ? WeylElement::identity(c) : parse_element(c, o.w1);
    emit_map(o, artin_T_map(ctx, State{w, w1}, o.j), json{{"j", o.j}});
  } else if (what == "xi") {
    const bool inverse = is_plain(w.at(o.position));
    emit_map(o, inverse ? xi_inverse_map(ctx, w, o.position) : xi_map(ctx, w, o.position),
             json{{"position", o.position}, {"inverse", inverse}});
  } else if (what == "mu-hat") {
    const auto [v, w1] = chosen_class(ctx, o, w);
    const Word t = parse_word(o.to);
    const State from{w, w1};
    std::optional<State> target;
    if (!o.to_w1.empty())
      target = State{t, parse_element(c, o.to_w1)};
    else
      for (const State& s : ctx.dhat_component(from, v, WordContext::dhat_moves()))
        if (s.word == t) {
          target = s;
          break;
        }
    if (!target) throw NoPath("'" + o.to + "' is not in the d-hat component of '" + o.word + "'");
    emit_map(o, mu_hat_map(ctx, from, *target, v), json{{"v", element_json(v)}, {"w1", element_json(w1)}});
  } else {
    throw ConfigError("unknown computation '" + what + "'");
  }
  return 0;
}

int cmd_words_path(const Options& o) {
  const CartanData c = parse_cartan(o.type);
  const WordContext ctx(c);
  const Word from = parse_word(o.from), to = parse_word(o.to);
  check_alphabet(c, from);
  check_alphabet(c, to);
  json steps = json::array();
  std::string text;
  auto add = [&](MoveKind k, std::size_t pos, const Word& a, const Word& b) {
    steps.push_back({{"move", move_kind_name(k)}, {"position", pos}, {"before", format_word(a)}, {"after", format_word(b)}});
    text += move_kind_name(k) + " at " + std::to_string(pos) + ": " + format_word(a) + " -> " + format_word(b) + "\n";
  };
  if (o.moves == "dhat") {
    const auto [v, w1] = chosen_class(ctx, o, from);
    const State start{from, w1};
    std::optional<State> target;
    if (!o.to_w1.empty())
      target = State{to, parse_element(c, o.to_w1)};
    else
      for (const State& s : ctx.dhat_component(start, v, WordContext::dhat_moves()))
        if (s.word == to) {
          target = s;
          break;
        }
    if (!target) throw NoPath("'" + o.to + "' is not reachable from '" + o.from + "' by d-hat moves");
    for (const auto& [st, e] : ctx.dhat_path(start, *target, v, WordContext::dhat_moves()))
      add(e.kind, e.position, st.word, ctx.apply_move(st.word, e.kind, e.position));
  } else {
    std::set<MoveKind> allowed;
    if (o.moves == "mixed2")
      allowed = {MoveKind::Mixed2};
    else if (o.moves == "d")
      allowed = {MoveKind::Mixed2, MoveKind::PositiveD, MoveKind::NegativeD};
    else if (o.moves == "all")
      allowed = WordContext::all_moves();
    else
      throw ConfigError("moves must be dhat, mixed2, d or all");
    for (const Move& m : ctx.move_path(from, to, allowed)) add(m.kind, m.position, m.before, m.after);
  }
  text += std::to_string(steps.size()) + " moves\n";
  emit(o, json{{"from", o.from}, {"to", o.to}, {"moves", steps}}, text);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cluster coordinates on dual Poisson-Lie groups: identity checks and computations"};
  app.require_subcommand(1);
  Options o;
  auto common = [&](CLI::App* a) {
    a->add_option("--type", o.type, "Cartan type, e.g. A1, A2, B2, G2");
    a->add_option("--out", o.out, "also write the JSON result to this file");
    a->add_option("--format", o.format, "json or text")->check(CLI::IsMember({"json", "text"}));
  };

  auto* verify = app.add_subcommand("verify", "run a named identity (or --all) at desk scale");
  common(verify);
  verify->add_option("identity,--identity", o.identity, "identity name");
  verify->add_flag("--all", o.all, "run every identity that applies to the type");
  verify->add_option("--trials", o.trials, "random points per instance");
  verify->add_option("--prime", o.prime, "modulus of the sampling field");
  verify->add_option("--rng-seed", o.rng_seed, "sampling seed (CLUSTER_DUAL_SEED overrides)");
  verify->add_option("--level", o.level, "seed or matrix");
  verify->add_flag("--allow-small-prime", o.allow_small_prime, "accept primes below 2^31");
  verify->add_flag("--timing", o.timing, "add elapsed_ms to reports");
  verify->add_option("--word", o.words, "replace the default instances (repeatable)");

  auto* compute = app.add_subcommand("compute", "evaluate one map or matrix at a rational point");
  common(compute);
  std::string what;
  compute->add_option("what", what, "seed, mutate, tropical, ev, ev-hat, artin-T, xi, mu-hat")
      ->required()
      ->check(CLI::IsMember({"seed", "mutate", "tropical", "ev", "ev-hat", "artin-T", "xi", "mu-hat"}));
  compute->add_option("--word", o.word, "double word, e.g. 1,-1")->required();
  compute->add_option("--point", o.point, "comma-separated rationals in layout order");
  compute->add_option("--index", o.index, "mutation direction i:k");
  compute->add_option("--side", o.side, "cover side of a tropical mutation: left or right");
  compute->add_option("--j", o.j, "Artin generator");
  compute->add_option("--position", o.position, "position of a dual move");
  compute->add_option("--to", o.to, "target word for mu-hat");
  compute->add_option("--v", o.v, "v as a plain word (default: class with the longest w1)");
  compute->add_option("--w1", o.w1, "w1 as a plain word, 'e' for the identity");
  compute->add_option("--to-w1", o.to_w1, "w1 of the target state for mu-hat");

  auto* words = app.add_subcommand("words", "word move graphs");
  auto* path = words->add_subcommand("path", "shortest chain of moves between two words");
  words->require_subcommand(1);
  common(path);
  path->add_option("--from", o.from)->required();
  path->add_option("--to", o.to)->required();
  path->add_option("--moves", o.moves, "dhat, mixed2, d or all")->check(CLI::IsMember({"dhat", "mixed2", "d", "all"}));
  path->add_option("--v", o.v, "v for d-hat moves");
  path->add_option("--w1", o.w1, "w1 of the start state for d-hat moves");
  path->add_option("--to-w1", o.to_w1, "w1 of the target state for d-hat moves");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  try {
    if (*verify) return cmd_verify(o);
    if (*compute) return cmd_compute(what, o);
    return cmd_words_path(o);
  } catch (const NoPath& e) {
    std::cerr << "no path: " << e.what() << "\n";
    return 1;
  } catch (const UnsupportedForType& e) {
    std::cerr << "UnsupportedForType: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
