#include "mbg/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace mbg {

ArgmaxResult argmax_set(std::span<const double> row, double tie_tol) {
  ArgmaxResult res;
  if (row.empty()) return res;
  res.value = *std::max_element(row.begin(), row.end());
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (row[i] >= res.value - tie_tol) res.alphas.push_back(i + 1);
  }
  return res;
}

namespace {

constexpr double kDeviationEps = 1e-10;

double meag_scale(const Meag& meag, PotentialMode mode) {
  double scale = 1.0;
  for (std::size_t b = 0; b < meag.dims.agent_count(); ++b) {
    if (mode == PotentialMode::kGroup) {
      for (double v : meag.agent_rows[b]) scale = std::max(scale, std::abs(v));
    } else {
      for (const auto& row : meag.player_rows[b]) {
        for (double v : row) scale = std::max(scale, std::abs(v));
      }
    }
  }
  return scale;
}

}  // namespace

std::vector<std::size_t> ne_oracle(const Meag& meag, PotentialMode mode, bool parallel) {
  const auto& dims = meag.dims;
  const std::size_t h = dims.htilde;
  const double thresh = kDeviationEps * meag_scale(meag, mode);
  std::vector<unsigned char> is_ne(h, 0);
  const std::ptrdiff_t hs = static_cast<std::ptrdiff_t>(h);

#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (parallel)
#endif
  for (std::ptrdiff_t as = 1; as <= hs; ++as) {
    const std::size_t alpha = static_cast<std::size_t>(as);
    bool ok = true;
    for (std::size_t b = 0; ok && b < dims.agent_count(); ++b) {
      const std::size_t cur = dims.digit(alpha, b);
      for (std::size_t d = 1; ok && d <= dims.agent_dims[b]; ++d) {
        if (d == cur) continue;
        const std::size_t beta = dims.with_digit(alpha, b, d);
        if (mode == PotentialMode::kGroup) {
          const auto& row = meag.agent_rows[b];
          if (row[beta - 1] > row[alpha - 1] + thresh) ok = false;
        } else {
          for (const auto& row : meag.player_rows[b]) {
            if (row[beta - 1] > row[alpha - 1] + thresh) {
              ok = false;
              break;
            }
          }
        }
      }
    }
    is_ne[alpha - 1] = ok ? 1 : 0;
  }
  (void)parallel;

  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < h; ++i) {
    if (is_ne[i]) out.push_back(i + 1);
  }
  return out;
}

std::vector<std::size_t> mbne_oracle(const MbgSpec& spec, PotentialMode mode, bool parallel) {
  const MeagDims dims = MeagDims::from_spec(spec);
  const std::size_t h = dims.htilde;
  const std::size_t r = dims.group_type_counts.size();
  const std::size_t gm = spec.action_profiles();
  const auto offsets = spec.group_offsets();

  double scale = 1.0;
  for (const auto& row : spec.payoffs) {
    for (double v : row) scale = std::max(scale, std::abs(v));
  }
  const double thresh = kDeviationEps * scale;

  std::vector<std::size_t> aplace(r, 1);
  for (std::size_t l = r; l-- > 1;) {
    aplace[l - 1] = aplace[l] * dims.group_action_counts[l];
  }

  std::vector<unsigned char> is_ne(h, 0);
  const std::ptrdiff_t hs = static_cast<std::ptrdiff_t>(h);

#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (parallel)
#endif
  for (std::ptrdiff_t as = 1; as <= hs; ++as) {
    const std::size_t alpha = static_cast<std::size_t>(as);
    std::vector<std::size_t> strat(dims.agent_count());
    lex_decode_into(alpha, dims.agent_dims, strat);
    std::vector<std::size_t> tdig(r), adig(r);
    std::vector<double> cand;
    bool ok = true;

    for (std::size_t l0 = 0; ok && l0 < r; ++l0) {
      const std::size_t gl = dims.group_action_counts[l0];
      const std::size_t ml = spec.group_sizes[l0];
      const std::size_t nmember = (mode == PotentialMode::kStrong) ? ml : 1;
      for (std::size_t k = 1; ok && k <= dims.group_type_counts[l0]; ++k) {
        // cand[(d-1) * nmember + j]: weighted payoff of member j (or the
        // group average) when group l0 plays d at type k.
        cand.assign(gl * nmember, 0.0);
        std::fill(tdig.begin(), tdig.end(), 1);
        tdig[l0] = k;
        while (true) {
          const std::size_t tau = lex_encode(dims.group_type_counts, tdig);
          const double p = spec.prior[tau - 1];
          if (p != 0.0) {
            std::size_t abase = 1;
            for (std::size_t l = 0; l < r; ++l) {
              if (l == l0) continue;
              abase += (strat[dims.group_first_agent[l] + tdig[l] - 1] - 1) * aplace[l];
            }
            for (std::size_t d = 1; d <= gl; ++d) {
              const std::size_t a = abase + (d - 1) * aplace[l0];
              const std::size_t col = (tau - 1) * gm + (a - 1);
              if (mode == PotentialMode::kStrong) {
                for (std::size_t j = 0; j < ml; ++j) {
                  cand[(d - 1) * nmember + j] += p * spec.payoffs[offsets[l0] + j][col];
                }
              } else {
                double sum = 0.0;
                for (std::size_t j = 0; j < ml; ++j) sum += spec.payoffs[offsets[l0] + j][col];
                cand[d - 1] += p * sum / static_cast<double>(ml);
              }
            }
          }
          bool advanced = false;
          for (std::size_t j = r; j-- > 0;) {
            if (j == l0) continue;
            if (tdig[j] < dims.group_type_counts[j]) {
              ++tdig[j];
              advanced = true;
              break;
            }
            tdig[j] = 1;
          }
          if (!advanced) break;
        }
        const std::size_t cur = strat[dims.group_first_agent[l0] + k - 1];
        for (std::size_t d = 1; ok && d <= gl; ++d) {
          if (d == cur) continue;
          for (std::size_t j = 0; j < nmember; ++j) {
            if (cand[(d - 1) * nmember + j] > cand[(cur - 1) * nmember + j] + thresh) {
              ok = false;
              break;
            }
          }
        }
      }
    }
    is_ne[alpha - 1] = ok ? 1 : 0;
  }
  (void)parallel;

  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < h; ++i) {
    if (is_ne[i]) out.push_back(i + 1);
  }
  return out;
}

EquilibriumReport solve_mbne(const MbgSpec& spec, const SolveOptions& opts) {
  EquilibriumReport rep;
  rep.mode = opts.mode;
  rep.tol = opts.tol;
  rep.tie_tol = opts.tie_tol;

  BuildPath path = opts.path;
  if (!opts.parallel && path == BuildPath::kDirectParallel) path = BuildPath::kDirectSerial;
  const Meag meag = build_meag(spec, path, opts.caps);
  rep.dims = meag.dims;
  const std::size_t h = meag.dims.htilde;

  const PotentialSystem sys = build_system(meag, opts.mode);
  const PotentialSolution sol = solve(sys, opts.tol);
  rep.potential_solvable = sol.solvable;
  rep.residual = sol.residual;
  rep.cg_iterations = sol.cg_iterations;
  rep.solver_note = sol.note;
  if (sol.solvable) {
    rep.potential = sol.potential;
    rep.potential_at_first = sol.potential.front();
    rep.argmax = argmax_set(rep.potential, opts.tie_tol);
    for (std::size_t alpha : rep.argmax.alphas) {
      rep.argmax_strategies.push_back(gamma_inverse(meag.dims, alpha));
    }
    rep.verify = verify_potential(meag, opts.mode, rep.potential, opts.tol, opts.parallel);
    rep.verified = true;
  }

  bool run_oracle = false;
  switch (opts.oracle) {
    case SolveOptions::Oracle::kOff:
      break;
    case SolveOptions::Oracle::kAuto:
      run_oracle = h <= opts.oracle_auto_cap;
      break;
    case SolveOptions::Oracle::kOn:
      if (h > opts.oracle_hard_cap) {
        throw std::length_error(
            "oracle requested but the strategy space exceeds the hard cap");
      }
      run_oracle = true;
      break;
  }
  if (run_oracle) {
    rep.oracle_ran = true;
    rep.oracle_ne = ne_oracle(meag, opts.mode, opts.parallel);
    rep.oracle_mbne = mbne_oracle(spec, opts.mode, opts.parallel);
    for (std::size_t alpha : rep.oracle_mbne) {
      rep.mbne_strategies.push_back(gamma_inverse(meag.dims, alpha));
    }
    rep.correspondence_ok = rep.oracle_ne == rep.oracle_mbne;
    std::set_difference(rep.oracle_ne.begin(), rep.oracle_ne.end(),
                        rep.argmax.alphas.begin(), rep.argmax.alphas.end(),
                        std::back_inserter(rep.ne_not_argmax));
    std::set_difference(rep.argmax.alphas.begin(), rep.argmax.alphas.end(),
                        rep.oracle_ne.begin(), rep.oracle_ne.end(),
                        std::back_inserter(rep.argmax_not_ne));
  }
  return rep;
}

}  // namespace mbg
