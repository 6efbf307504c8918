#include "mbg/generator.hpp"

#include <stdexcept>

#include "mbg/meag.hpp"

namespace mbg {

namespace {

std::vector<std::vector<std::size_t>> partitions_within_cap(std::size_t m, std::size_t e,
                                                            std::size_t g,
                                                            std::size_t max_htilde) {
  // All contiguous partitions (compositions) of m whose agent space fits.
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  auto rec = [&](auto&& self, std::size_t left) -> void {
    if (left == 0) {
      std::size_t htilde = 1;
      bool fits = true;
      try {
        for (std::size_t ml : cur) {
          const std::size_t el = checked_pow(e, ml);
          const std::size_t gl = checked_pow(g, ml);
          htilde = checked_mul(htilde, checked_pow(gl, el));
          if (htilde > max_htilde) {
            fits = false;
            break;
          }
        }
      } catch (const std::overflow_error&) {
        fits = false;
      }
      if (fits) out.push_back(cur);
      return;
    }
    for (std::size_t take = 1; take <= left; ++take) {
      cur.push_back(take);
      self(self, left - take);
      cur.pop_back();
    }
  };
  rec(rec, m);
  return out;
}

void fill_prior(Rng& rng, MbgSpec& spec, double zero_prior_prob) {
  const std::size_t n = spec.type_profiles();
  spec.prior.assign(n, 0.0);
  const bool sparse = rng.uniform() < zero_prior_prob && n > 1;
  double sum = 0.0;
  for (double& p : spec.prior) {
    const bool zero = sparse && rng.uniform() < 0.4;
    p = zero ? 0.0 : rng.uniform(0.05, 1.0);
    sum += p;
  }
  if (sum == 0.0) {
    spec.prior[0] = 1.0;
    return;
  }
  for (double& p : spec.prior) p /= sum;
}

MbgSpec random_shell(Rng& rng, const RandomSpecOptions& opts) {
  if (opts.min_players == 0 || opts.max_players < opts.min_players) {
    throw std::invalid_argument("bad player range");
  }
  MbgSpec spec;
  spec.num_players = opts.min_players + rng.below(opts.max_players - opts.min_players + 1);
  spec.num_types = opts.num_types;
  spec.num_actions = opts.num_actions;
  const auto parts = partitions_within_cap(spec.num_players, opts.num_types,
                                           opts.num_actions, opts.max_htilde);
  if (parts.empty()) {
    throw std::invalid_argument("no group partition fits the agent-space cap");
  }
  spec.group_sizes = parts[rng.below(parts.size())];
  fill_prior(rng, spec, opts.zero_prior_prob);
  return spec;
}

}  // namespace

MbgSpec random_spec(std::uint64_t seed, const RandomSpecOptions& opts) {
  Rng rng(seed);
  MbgSpec spec = random_shell(rng, opts);
  const std::size_t width = spec.type_action_profiles();
  spec.payoffs.assign(spec.num_players, std::vector<double>(width));
  for (auto& row : spec.payoffs) {
    for (double& v : row) v = rng.uniform(opts.low, opts.high);
  }
  return spec;
}

MbgSpec random_potential_spec(std::uint64_t seed, PotentialMode mode,
                              const RandomSpecOptions& opts) {
  Rng rng(seed ^ 0xa5a5a5a55a5a5a5aull);
  MbgSpec spec = random_shell(rng, opts);
  const std::size_t tcount = spec.type_profiles();
  const std::size_t acount = spec.action_profiles();
  const std::size_t width = spec.type_action_profiles();
  const std::size_t r = spec.num_groups();
  const auto offsets = spec.group_offsets();

  std::vector<double> common(width);
  for (double& v : common) v = rng.uniform(opts.low, opts.high);

  spec.payoffs.assign(spec.num_players, common);

  // Group-action radices and the reduced index with group l's digit removed.
  std::vector<std::size_t> gradix(r), aplace(r, 1);
  for (std::size_t l = 0; l < r; ++l) gradix[l] = spec.group_action_count(l + 1);
  for (std::size_t l = r; l-- > 1;) aplace[l - 1] = aplace[l] * gradix[l];

  for (std::size_t l = 0; l < r; ++l) {
    const std::size_t ml = spec.group_sizes[l];
    const std::size_t other_count = acount / gradix[l];
    // Per-member noise over (type profile, other groups' actions).
    std::vector<std::vector<double>> noise(ml, std::vector<double>(tcount * other_count));
    for (auto& row : noise) {
      for (double& v : row) v = rng.uniform(opts.low, opts.high);
    }
    std::vector<std::size_t> adig(r);
    for (std::size_t a = 1; a <= acount; ++a) {
      lex_decode_into(a, gradix, adig);
      std::size_t other = 0;
      for (std::size_t j = 0; j < r; ++j) {
        if (j != l) other = other * gradix[j] + (adig[j] - 1);
      }
      for (std::size_t t = 1; t <= tcount; ++t) {
        const std::size_t col = (t - 1) * acount + (a - 1);
        const std::size_t nidx = (t - 1) * other_count + other;
        if (mode == PotentialMode::kStrong) {
          for (std::size_t j = 0; j < ml; ++j) {
            spec.payoffs[offsets[l] + j][col] += noise[j][nidx];
          }
        } else {
          // Common group shift plus a zero-sum individual part that may
          // depend on the full action profile.
          for (std::size_t j = 0; j < ml; ++j) {
            spec.payoffs[offsets[l] + j][col] += noise[j][nidx];
          }
        }
      }
    }
    if (mode == PotentialMode::kGroup && ml > 1) {
      std::vector<double> zsum(width, 0.0);
      std::vector<std::vector<double>> z(ml - 1, std::vector<double>(width));
      for (std::size_t j = 0; j + 1 < ml; ++j) {
        for (std::size_t c = 0; c < width; ++c) {
          z[j][c] = rng.uniform(opts.low, opts.high);
          zsum[c] += z[j][c];
        }
      }
      for (std::size_t j = 0; j + 1 < ml; ++j) {
        for (std::size_t c = 0; c < width; ++c) spec.payoffs[offsets[l] + j][c] += z[j][c];
      }
      for (std::size_t c = 0; c < width; ++c) {
        spec.payoffs[offsets[l] + ml - 1][c] -= zsum[c];
      }
    }
  }
  return spec;
}

}  // namespace mbg
