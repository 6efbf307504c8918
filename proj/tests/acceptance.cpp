// Acceptance suite: seven end-to-end criteria, one verdict line each.
// Exits nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "mbg/equilibrium.hpp"
#include "mbg/generator.hpp"
#include "mbg/spec_io.hpp"

using namespace mbg;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

// Shared tally for criterion 4: whenever a tested game is solvable and the
// brute-force oracle ran, every potential maximizer must be an equilibrium.
struct ArgmaxNeTally {
  std::size_t cases = 0;
  std::size_t violations = 0;

  void record(const std::vector<double>& potential,
              const std::vector<std::size_t>& ne, double tie_tol) {
    ++cases;
    const ArgmaxResult am = argmax_set(potential, tie_tol);
    if (!std::includes(ne.begin(), ne.end(), am.alphas.begin(), am.alphas.end())) {
      ++violations;
    }
  }
};

constexpr double kResidualTol = 1e-8;
constexpr double kTieTol = 1e-9;
constexpr double kGaugeTol = 1e-6;
constexpr double kStpTol = 1e-10;
constexpr double kPathTol = 1e-10;
constexpr double kControlResidual = 1e-4;

// ---------------------------------------------------------------------------
// 1. The bundled first-price auction demo, group mode, end to end.
Outcome criterion1(ArgmaxNeTally& tally) {
  const auto t0 = std::chrono::steady_clock::now();
  const MbgSpec spec = example_auction();
  SolveOptions opts;
  opts.oracle = SolveOptions::Oracle::kOn;
  const EquilibriumReport rep = solve_mbne(spec, opts);
  const double elapsed = seconds_since(t0);

  std::ostringstream why;
  bool ok = true;
  auto need = [&](bool cond, const char* what) {
    if (!cond) {
      ok = false;
      why << (why.tellp() > 0 ? "; " : "") << what;
    }
  };

  need(rep.potential_solvable && rep.residual <= kResidualTol,
       "potential not solvable at 1e-8");
  need(rep.argmax.alphas == std::vector<std::size_t>{1, 257, 513, 769},
       "argmax set is not {1,257,513,769}");
  bool group2_locked = !rep.argmax_strategies.empty();
  for (const auto& s : rep.argmax_strategies) {
    for (std::size_t k = 0; k < 4; ++k) {
      if (s.size() < 2 || s[1].size() != 4 || s[1][k] != 1) group2_locked = false;
    }
  }
  need(group2_locked, "group 2 does not play its first joint action at all types");
  double gauge_spread = 0.0;
  if (rep.potential_solvable && !rep.argmax.alphas.empty()) {
    const double f1 = rep.potential[rep.argmax.alphas[0] - 1];
    for (std::size_t a : rep.argmax.alphas) {
      gauge_spread = std::max(gauge_spread, std::abs(rep.potential[a - 1] - f1));
    }
  }
  need(gauge_spread <= kGaugeTol, "potential differs across maximizers");
  need(std::abs(rep.argmax.value - rep.potential_at_first) <= kTieTol,
       "first profile is not itself a maximizer");
  need(rep.verified && rep.verify.ok, "identity verification failed");
  need(rep.oracle_ran && rep.correspondence_ok, "oracle sets differ");
  need(rep.ne_not_argmax.empty() && rep.argmax_not_ne.empty(),
       "argmax and equilibrium sets differ");
  need(elapsed < 10.0, "took 10 s or more");

  if (rep.potential_solvable && rep.oracle_ran) {
    tally.record(rep.potential, rep.oracle_ne, kTieTol);
  }

  if (!ok) return {false, why.str()};
  std::ostringstream d;
  d << "argmax {1,257,513,769}, group 2 locked to (bid=70, bid=30) at every type, "
    << "identity and oracle cross-checks clean; raw minimum-norm peak "
    << format_double(rep.argmax.value)
    << " (6.855 in the demo's usual additive gauge); " << format_double(elapsed)
    << " s";
  return {true, d.str()};
}

// ---------------------------------------------------------------------------
// 2. Transform correspondence: on random games, the agent-game equilibria and
// the original-game equilibria are the same set, in both modes.
Outcome criterion2(ArgmaxNeTally& tally) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::size_t games = 200;
  std::size_t mismatches = 0, nonempty = 0, max_htilde = 0;
  for (std::uint64_t seed = 100; seed < 100 + games; ++seed) {
    const MbgSpec spec = random_spec(seed);
    const Meag meag = build_meag(spec);
    max_htilde = std::max(max_htilde, meag.dims.htilde);
    for (const PotentialMode mode : {PotentialMode::kGroup, PotentialMode::kStrong}) {
      const auto ne = ne_oracle(meag, mode);
      const auto mbne = mbne_oracle(spec, mode);
      if (ne != mbne) ++mismatches;
      if (!ne.empty()) ++nonempty;
      const PotentialSolution sol = solve(build_system(meag, mode), kResidualTol);
      if (sol.solvable) tally.record(sol.potential, ne, kTieTol);
    }
  }
  const double elapsed = seconds_since(t0);
  const bool ok = mismatches == 0 && elapsed < 60.0;
  std::ostringstream d;
  d << games << " random games x 2 modes, " << mismatches
    << " set mismatches, " << nonempty
    << " cases with equilibria, largest strategy space " << max_htilde << "; "
    << format_double(elapsed) << " s";
  return {ok, d.str()};
}

// ---------------------------------------------------------------------------
// 3. Designed potential games solve and verify at 1e-8 in their design mode;
// strongly designed ones are also group solvable.
Outcome criterion3(ArgmaxNeTally& tally) {
  std::size_t solved = 0, verified = 0, strong_implies_group = 0, total = 0;
  double max_residual = 0.0;
  for (const PotentialMode mode : {PotentialMode::kGroup, PotentialMode::kStrong}) {
    const std::uint64_t base = mode == PotentialMode::kGroup ? 1000 : 2000;
    for (std::uint64_t seed = base; seed < base + 50; ++seed) {
      ++total;
      const MbgSpec spec = random_potential_spec(seed, mode);
      const Meag meag = build_meag(spec);
      const PotentialSolution sol = solve(build_system(meag, mode), kResidualTol);
      if (!sol.solvable) continue;
      ++solved;
      max_residual = std::max(max_residual, sol.residual);
      if (verify_potential(meag, mode, sol.potential, kResidualTol).ok) ++verified;
      if (mode == PotentialMode::kStrong) {
        if (solve(build_system(meag, PotentialMode::kGroup), kResidualTol).solvable) {
          ++strong_implies_group;
        }
      }
      tally.record(sol.potential, ne_oracle(meag, mode), kTieTol);
    }
  }
  const bool ok = solved == total && verified == total && strong_implies_group == 50;
  std::ostringstream d;
  d << solved << "/" << total << " solvable, " << verified
    << "/" << total << " pass the identity check, " << strong_implies_group
    << "/50 strong games group-solvable, max residual "
    << format_double(max_residual);
  return {ok, d.str()};
}

// ---------------------------------------------------------------------------
// 4. Aggregated over everything above: maximizers of a solved potential are
// always equilibria.
Outcome criterion4(const ArgmaxNeTally& tally) {
  const bool ok = tally.violations == 0 && tally.cases >= 100;
  std::ostringstream d;
  d << tally.violations << " violations in " << tally.cases
    << " solvable oracle-checked cases";
  return {ok, d.str()};
}

// ---------------------------------------------------------------------------
// 5. Product identities, exhaustive small shapes plus random instances.
Matrix random_matrix(Rng& rng, std::size_t r, std::size_t c) {
  Matrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = rng.uniform(-2.0, 2.0);
  return m;
}

Outcome criterion5() {
  Rng rng(20260813);
  double max_err = 0.0;
  std::size_t exact = 0, random_cases = 0;
  auto track = [&](const Matrix& a, const Matrix& b) {
    max_err = std::max(max_err, a.max_abs_diff(b));
  };

  // associativity across every shape combination up to 5, then larger random
  for (std::size_t r1 = 1; r1 <= 5; ++r1)
    for (std::size_t c1 = 1; c1 <= 5; ++c1)
      for (std::size_t r2 = 1; r2 <= 5; ++r2)
        for (std::size_t c2 = 1; c2 <= 5; ++c2)
          for (std::size_t r3 = 1; r3 <= 5; ++r3)
            for (std::size_t c3 = 1; c3 <= 5; ++c3) {
              const Matrix a = random_matrix(rng, r1, c1);
              const Matrix b = random_matrix(rng, r2, c2);
              const Matrix c = random_matrix(rng, r3, c3);
              track(stp(stp(a, b), c), stp(a, stp(b, c)));
              ++exact;
            }
  for (std::size_t n = 0; n < 1000; ++n) {
    const Matrix a = random_matrix(rng, 1 + rng.below(8), 1 + rng.below(8));
    const Matrix b = random_matrix(rng, 1 + rng.below(8), 1 + rng.below(8));
    const Matrix c = random_matrix(rng, 1 + rng.below(8), 1 + rng.below(8));
    track(stp(stp(a, b), c), stp(a, stp(b, c)));
    ++random_cases;
  }

  // the product reduces to the ordinary one on matching dimensions
  for (std::size_t n = 0; n < 1000; ++n) {
    const std::size_t r = 1 + rng.below(6), k = 1 + rng.below(6),
                      c = 1 + rng.below(6);
    const Matrix a = random_matrix(rng, r, k);
    const Matrix b = random_matrix(rng, k, c);
    track(stp(a, b), a * b);
    ++random_cases;
  }

  // swap matrices exchange logical factors; transpose swaps the arguments
  for (std::size_t h = 1; h <= 5; ++h)
    for (std::size_t q = 1; q <= 5; ++q) {
      const Matrix w = swap_matrix(h, q);
      track(w.transpose(), swap_matrix(q, h));
      track(w * w.transpose(), Matrix::identity(h * q));
      ++exact;
      for (std::size_t i = 1; i <= h; ++i)
        for (std::size_t j = 1; j <= q; ++j) {
          const Matrix dh = LogicalVector{h, i}.dense();
          const Matrix dq = LogicalVector{q, j}.dense();
          track(stp(w, stp(dh, dq)), stp(dq, dh));
          ++exact;
        }
    }
  for (std::size_t n = 0; n < 1000; ++n) {
    const std::size_t h = 1 + rng.below(12), q = 1 + rng.below(12);
    const std::size_t i = 1 + rng.below(h), j = 1 + rng.below(q);
    const Matrix dh = LogicalVector{h, i}.dense();
    const Matrix dq = LogicalVector{q, j}.dense();
    track(stp(swap_matrix(h, q), stp(dh, dq)), stp(dq, dh));
    ++random_cases;
  }

  // order reduction turns a square of one logical vector into one pass
  for (std::size_t q = 1; q <= 5; ++q)
    for (std::size_t k = 1; k <= q; ++k) {
      const Matrix d = LogicalVector{q, k}.dense();
      track(stp(order_reduce_matrix(q), d), stp(d, d));
      ++exact;
    }
  for (std::size_t n = 0; n < 1000; ++n) {
    const std::size_t q = 1 + rng.below(20), k = 1 + rng.below(q);
    const Matrix d = LogicalVector{q, k}.dense();
    track(stp(order_reduce_matrix(q), d), stp(d, d));
    ++random_cases;
  }

  // a logical column passes left over any matrix via an identity expansion
  for (std::size_t q = 1; q <= 5; ++q)
    for (std::size_t i = 1; i <= q; ++i)
      for (std::size_t r = 1; r <= 4; ++r)
        for (std::size_t c = 1; c <= 4; ++c) {
          const Matrix d = LogicalVector{q, i}.dense();
          const Matrix m = random_matrix(rng, r, c);
          track(stp(d, m), stp(kron(Matrix::identity(q), m), d));
          ++exact;
        }
  for (std::size_t n = 0; n < 1000; ++n) {
    const std::size_t q = 1 + rng.below(6), i = 1 + rng.below(q);
    const Matrix d = LogicalVector{q, i}.dense();
    const Matrix m = random_matrix(rng, 1 + rng.below(6), 1 + rng.below(6));
    track(stp(d, m), stp(kron(Matrix::identity(q), m), d));
    ++random_cases;
  }

  // the middle selector picks the middle logical factor out of a product
  for (std::size_t h = 1; h <= 4; ++h)
    for (std::size_t q = 1; q <= 4; ++q)
      for (std::size_t x = 1; x <= 4; ++x)
        for (std::size_t i = 1; i <= h; ++i)
          for (std::size_t j = 1; j <= q; ++j)
            for (std::size_t k = 1; k <= x; ++k) {
              const Matrix prod =
                  stp(stp(LogicalVector{h, i}.dense(), LogicalVector{q, j}.dense()),
                      LogicalVector{x, k}.dense());
              track(stp(selector_matrix(h, q, x), prod),
                    LogicalVector{q, j}.dense());
              ++exact;
            }
  for (std::size_t n = 0; n < 1000; ++n) {
    const std::size_t h = 1 + rng.below(6), q = 1 + rng.below(6),
                      x = 1 + rng.below(6);
    const std::size_t i = 1 + rng.below(h), j = 1 + rng.below(q),
                      k = 1 + rng.below(x);
    const Matrix prod =
        stp(stp(LogicalVector{h, i}.dense(), LogicalVector{q, j}.dense()),
            LogicalVector{x, k}.dense());
    track(stp(selector_matrix(h, q, x), prod), LogicalVector{q, j}.dense());
    ++random_cases;
  }

  // the Kronecker mixed-product identity
  for (std::size_t n = 0; n < 1000; ++n) {
    const std::size_t r1 = 1 + rng.below(4), k1 = 1 + rng.below(4),
                      c1 = 1 + rng.below(4);
    const std::size_t r2 = 1 + rng.below(4), k2 = 1 + rng.below(4),
                      c2 = 1 + rng.below(4);
    const Matrix a = random_matrix(rng, r1, k1), c = random_matrix(rng, k1, c1);
    const Matrix b = random_matrix(rng, r2, k2), d = random_matrix(rng, k2, c2);
    track(kron(a, b) * kron(c, d), kron(a * c, b * d));
    ++random_cases;
  }

  const bool ok = max_err <= kStpTol;
  std::ostringstream d;
  d << exact << " exhaustive + " << random_cases
    << " random instances across 7 identities, max error " << format_double(max_err);
  return {ok, d.str()};
}

// ---------------------------------------------------------------------------
// 6. The structure-matrix build path reproduces the direct summation.
Outcome criterion6() {
  double max_diff = 0.0;
  std::size_t games = 0, max_htilde = 0;
  for (std::uint64_t seed = 3000; seed < 3100; ++seed) {
    const MbgSpec spec = random_spec(seed);
    const Meag direct = build_meag(spec, BuildPath::kDirectParallel);
    const Meag structural = build_meag(spec, BuildPath::kStructure);
    ++games;
    max_htilde = std::max(max_htilde, direct.dims.htilde);
    for (std::size_t b = 0; b < direct.player_rows.size(); ++b) {
      for (std::size_t j = 0; j < direct.player_rows[b].size(); ++j) {
        for (std::size_t a = 0; a < direct.dims.htilde; ++a) {
          max_diff = std::max(max_diff,
                              std::abs(direct.player_rows[b][j][a] -
                                       structural.player_rows[b][j][a]));
        }
      }
      for (std::size_t a = 0; a < direct.dims.htilde; ++a) {
        max_diff = std::max(
            max_diff, std::abs(direct.agent_rows[b][a] - structural.agent_rows[b][a]));
      }
    }
  }
  const bool ok = games == 100 && max_diff <= kPathTol;
  std::ostringstream d;
  d << games << " games, largest strategy space " << max_htilde
    << ", max row difference " << format_double(max_diff);
  return {ok, d.str()};
}

// ---------------------------------------------------------------------------
// 7. Negative control: generic two-player complete-information games are not
// potential, and the oracle matches hand enumeration on them.
Outcome criterion7() {
  std::size_t not_potential = 0, spot_ok = 0;
  const std::size_t games = 100, spots = 10;
  for (std::uint64_t seed = 4000; seed < 4000 + games; ++seed) {
    Rng rng(seed);
    MbgSpec spec;
    spec.num_players = 2;
    spec.group_sizes = {1, 1};
    spec.num_types = 1;
    spec.num_actions = 2;
    spec.prior = {1.0};
    spec.payoffs.assign(2, std::vector<double>(4));
    double scale = 1.0;
    for (auto& row : spec.payoffs)
      for (double& v : row) {
        v = rng.uniform(-5.0, 5.0);
        scale = std::max(scale, std::abs(v));
      }

    const Meag meag = build_meag(spec);
    const PotentialSolution sol =
        solve(build_system(meag, PotentialMode::kGroup), kResidualTol);
    if (!sol.solvable && sol.residual > kControlResidual) ++not_potential;

    if (seed < 4000 + spots) {
      // hand enumeration straight off the payoff tables
      const double eps = 1e-10 * scale;
      auto u = [&](std::size_t player, std::size_t a1, std::size_t a2) {
        return spec.payoffs[player][(a1 - 1) * 2 + (a2 - 1)];
      };
      std::vector<std::size_t> hand;
      for (std::size_t a1 = 1; a1 <= 2; ++a1)
        for (std::size_t a2 = 1; a2 <= 2; ++a2) {
          const bool p1_ok = u(0, 3 - a1, a2) - u(0, a1, a2) <= eps;
          const bool p2_ok = u(1, a1, 3 - a2) - u(1, a1, a2) <= eps;
          if (p1_ok && p2_ok) hand.push_back(gamma(meag.dims, {{a1}, {a2}}));
        }
      std::sort(hand.begin(), hand.end());
      if (hand == mbne_oracle(spec, PotentialMode::kGroup) &&
          hand == ne_oracle(meag, PotentialMode::kGroup)) {
        ++spot_ok;
      }
    }
  }
  const bool ok = not_potential >= 95 && spot_ok == spots;
  std::ostringstream d;
  d << not_potential << "/" << games << " games not potential (residual > 1e-4), "
    << spot_ok << "/" << spots << " hand-enumerated equilibrium sets match";
  return {ok, d.str()};
}

}  // namespace

int main() {
  const char* names[7] = {
      "auction demo pipeline",
      "agent-game equilibrium correspondence",
      "designed potential games",
      "potential maximizers are equilibria",
      "product identities",
      "build paths agree",
      "negative control",
  };

  ArgmaxNeTally tally;
  Outcome results[7];
  results[0] = criterion1(tally);
  results[1] = criterion2(tally);
  results[2] = criterion3(tally);
  results[3] = criterion4(tally);
  results[4] = criterion5();
  results[5] = criterion6();
  results[6] = criterion7();

  int failures = 0;
  for (int i = 0; i < 7; ++i) {
    if (!results[i].pass) ++failures;
    std::printf("[%d] %s %s: %s\n", i + 1, results[i].pass ? "PASS" : "FAIL",
                names[i], results[i].detail.c_str());
  }
  std::printf("acceptance: %d/7 criteria passed\n", 7 - failures);
  return failures;
}
