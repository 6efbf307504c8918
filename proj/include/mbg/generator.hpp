#pragma once

#include <cstdint>

#include "mbg/game.hpp"
#include "mbg/potential.hpp"

namespace mbg {

// Deterministic splitmix64 stream; self-contained so seeded fixtures don't
// depend on the standard library's distribution internals.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed ^ 0x9e3779b97f4a7c15ull) {}
  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(next() % n); }

 private:
  std::uint64_t state_;
};

struct RandomSpecOptions {
  std::size_t min_players = 1;
  std::size_t max_players = 3;
  std::size_t num_types = 2;
  std::size_t num_actions = 2;
  // Group partitions whose agent strategy space exceeds this are not drawn.
  std::size_t max_htilde = std::size_t{1} << 12;
  double low = -5.0;
  double high = 5.0;
  // Probability that the prior gets a sparsity pass (some types zero-mass).
  double zero_prior_prob = 0.15;
};

// Uniformly random game: random contiguous partition (within the size cap),
// normalized random prior, i.i.d. payoffs.
MbgSpec random_spec(std::uint64_t seed, const RandomSpecOptions& opts = {});

// Potential by construction. A common term F(t, a) is shared by everyone;
// each player adds noise that cannot affect their group's best-response
// differences: in strong mode the noise ignores the own group's joint
// action; in group mode it may depend on anything but sums to zero inside
// the group (so it cancels from the average but generically breaks the
// strong property).
MbgSpec random_potential_spec(std::uint64_t seed, PotentialMode mode,
                              const RandomSpecOptions& opts = {});

}  // namespace mbg
