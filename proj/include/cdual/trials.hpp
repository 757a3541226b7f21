#pragma once

#include "cdual/arith.hpp"

#include <cstdint>
#include <exception>
#include <string>
#include <utility>
#include <vector>

namespace cdual {

struct TrialConfig {
  std::uint64_t prime = (1ULL << 61) - 1;
  std::size_t trials = 50;
  std::uint64_t rng_seed = 1;
  // Point resamples allowed per trial before the run is declared inconclusive.
  std::size_t attempts_per_trial = 16;
  bool parallel = true;
  bool allow_small_prime = false;

  // Throws std::invalid_argument when the prime is composite, too small, or >= 2^62.
  void validate() const;
};

std::uint64_t splitmix64(std::uint64_t& state);

// Seed of the random stream used by one attempt of one trial; independent of scheduling.
std::uint64_t trial_stream_seed(std::uint64_t rng_seed, std::size_t trial, std::size_t attempt);

// Uniform integers in [2, p-2], so that no coordinate is 0 or -1 by construction.
std::vector<std::uint64_t> sample_integers(std::uint64_t stream_seed, std::size_t dim, std::uint64_t prime);

enum class Compare { Componentwise, Projective };

template <class T>
bool vectors_agree(const std::vector<T>& a, const std::vector<T>& b, Compare mode) {
  if (a.size() != b.size()) return false;
  if (mode == Compare::Componentwise) {
    for (std::size_t i = 0; i < a.size(); ++i)
      if (!(scalar_value(a[i]) == scalar_value(b[i]))) return false;
    return true;
  }
  // Projective: same zero pattern and a single common ratio.
  std::size_t pivot = a.size();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (is_zero(a[i]) != is_zero(b[i])) return false;
    if (pivot == a.size() && !is_zero(a[i])) pivot = i;
  }
  if (pivot == a.size()) return true;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!(scalar_value(a[i] * b[pivot]) == scalar_value(b[i] * a[pivot]))) return false;
  return true;
}

struct Counterexample {
  std::string label;
  std::vector<std::string> point, lhs, rhs;
};

struct Verdict {
  enum class Kind { Equal, CounterexampleAt, Inconclusive };
  Kind kind = Kind::Equal;
  std::size_t trials = 0;   // trials that reached a comparison
  std::size_t skipped = 0;  // singular sample points discarded
  std::vector<Counterexample> failures;
  std::string note;

  bool equal() const { return kind == Kind::Equal; }
  std::string kind_name() const;
};

// Result of evaluating one trial; kept per trial index so reduction is order-independent.
struct TrialRecord {
  enum class Status { Agree, Disagree, Exhausted, Error } status = Status::Agree;
  std::size_t skipped = 0;
  Counterexample failure;
  std::string error;
};

template <class Eval>
std::vector<TrialRecord> run_trials_serial(const Eval& eval, std::size_t n) {
  std::vector<TrialRecord> out(n);
  for (std::size_t t = 0; t < n; ++t) out[t] = eval(t);
  return out;
}

template <class Eval>
std::vector<TrialRecord> run_trials_parallel(const Eval& eval, std::size_t n) {
  std::vector<TrialRecord> out(n);
  const long long count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic)
  for (long long t = 0; t < count; ++t) {
    try {
      out[static_cast<std::size_t>(t)] = eval(static_cast<std::size_t>(t));
    } catch (const std::exception& e) {
      out[static_cast<std::size_t>(t)].status = TrialRecord::Status::Error;
      out[static_cast<std::size_t>(t)].error = e.what();
    }
  }
  return out;
}

Verdict reduce_records(const std::vector<TrialRecord>& records);

template <class T>
std::vector<std::string> stringify(const std::vector<T>& v) {
  std::vector<std::string> out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(to_string(x));
  return out;
}

// One trial: sample, evaluate in F_p, and on disagreement re-evaluate in Q at the same
// integer point. Only a disagreement that survives in Q is reported.
template <class PairFn>
TrialRecord run_one_trial(const PairFn& pair_fn, std::size_t dim, const TrialConfig& cfg, Compare mode,
                          std::size_t trial) {
  TrialRecord rec;
  for (std::size_t attempt = 0; attempt < cfg.attempts_per_trial; ++attempt) {
    auto ints = sample_integers(trial_stream_seed(cfg.rng_seed, trial, attempt), dim, cfg.prime);
    std::vector<Fp> pf;
    pf.reserve(dim);
    for (auto v : ints) pf.push_back(Fp::from_u64(v, cfg.prime));
    try {
      auto [a, b] = pair_fn(pf);
      if (vectors_agree(a, b, mode)) {
        rec.status = TrialRecord::Status::Agree;
        return rec;
      }
    } catch (const std::domain_error&) {
      ++rec.skipped;
      continue;
    }
    std::vector<Rational> pq;
    pq.reserve(dim);
    for (auto v : ints) pq.emplace_back(mpq_class(mpz_class(std::to_string(v))));
    try {
      auto [a, b] = pair_fn(pq);
      if (vectors_agree(a, b, mode)) {
        ++rec.skipped;  // F_p artefact: the identity holds over Q at this point
        continue;
      }
      rec.status = TrialRecord::Status::Disagree;
      rec.failure.point = stringify(pq);
      rec.failure.lhs = stringify(a);
      rec.failure.rhs = stringify(b);
      return rec;
    } catch (const std::domain_error&) {
      ++rec.skipped;
      continue;
    }
  }
  rec.status = TrialRecord::Status::Exhausted;
  return rec;
}

// pair_fn is a generic callable: for a point of either Fp or Rational it returns the pair
// (lhs, rhs) of value vectors to compare.
template <class PairFn>
Verdict maps_equal_probabilistic(const PairFn& pair_fn, std::size_t dim, const TrialConfig& cfg,
                                 Compare mode = Compare::Componentwise) {
  cfg.validate();
  auto eval = [&](std::size_t t) { return run_one_trial(pair_fn, dim, cfg, mode, t); };
  auto recs = cfg.parallel ? run_trials_parallel(eval, cfg.trials) : run_trials_serial(eval, cfg.trials);
  return reduce_records(recs);
}

// Two-map form: f and g are generic callables from a point to a value vector.
template <class F, class G>
Verdict maps_equal_probabilistic(const F& f, const G& g, std::size_t dim, const TrialConfig& cfg,
                                 Compare mode = Compare::Componentwise) {
  auto pair_fn = [&](const auto& pt) { return std::make_pair(f(pt), g(pt)); };
  return maps_equal_probabilistic(pair_fn, dim, cfg, mode);
}

}  // namespace cdual
