#include "cdual/trials.hpp"

#include <stdexcept>

namespace cdual {

void TrialConfig::validate() const {
  if (trials < 1) throw std::invalid_argument("trials must be at least 1");
  if (attempts_per_trial < 1) throw std::invalid_argument("attempts_per_trial must be at least 1");
  if (prime >= (1ULL << 62)) throw std::invalid_argument("prime must be below 2^62");
  if (!is_prime_u64(prime)) throw std::invalid_argument("modulus " + std::to_string(prime) + " is not prime");
  if (!allow_small_prime && prime < (1ULL << 31))
    throw std::invalid_argument("prime " + std::to_string(prime) + " is below 2^31");
}

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t trial_stream_seed(std::uint64_t rng_seed, std::size_t trial, std::size_t attempt) {
  std::uint64_t s = rng_seed;
  std::uint64_t a = splitmix64(s);
  s = a ^ (static_cast<std::uint64_t>(trial) * 0xd1b54a32d192ed03ULL);
  std::uint64_t b = splitmix64(s);
  s = b ^ (static_cast<std::uint64_t>(attempt) * 0x8cb92ba72f3d8dd7ULL);
  return splitmix64(s);
}

std::vector<std::uint64_t> sample_integers(std::uint64_t stream_seed, std::size_t dim, std::uint64_t prime) {
  std::vector<std::uint64_t> out(dim);
  std::uint64_t s = stream_seed;
  const std::uint64_t span = prime - 3;  // values 2 .. p-2
  for (auto& v : out) {
    // Rejection sampling keeps the distribution exactly uniform.
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t r;
    do r = splitmix64(s);
    while (r >= limit);
    v = 2 + r % span;
  }
  return out;
}

std::string Verdict::kind_name() const {
  switch (kind) {
    case Kind::Equal: return "Equal";
    case Kind::CounterexampleAt: return "CounterexampleAt";
    case Kind::Inconclusive: return "Inconclusive";
  }
  return "?";
}

Verdict reduce_records(const std::vector<TrialRecord>& records) {
  Verdict v;
  for (std::size_t t = 0; t < records.size(); ++t) {
    const auto& r = records[t];
    v.skipped += r.skipped;
    switch (r.status) {
      case TrialRecord::Status::Agree: ++v.trials; break;
      case TrialRecord::Status::Disagree:
        ++v.trials;
        v.failures.push_back(r.failure);
        v.kind = Verdict::Kind::CounterexampleAt;
        break;
      case TrialRecord::Status::Exhausted:
        if (v.kind == Verdict::Kind::Equal) v.kind = Verdict::Kind::Inconclusive;
        v.note = "retry budget exhausted at trial " + std::to_string(t);
        break;
      case TrialRecord::Status::Error:
        throw std::runtime_error("trial " + std::to_string(t) + " failed: " + r.error);
    }
  }
  return v;
}

}  // namespace cdual
