#include "mbg/potential.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

namespace mbg {

std::size_t PotentialSystem::cols() const {
  std::size_t c = htilde;
  for (const auto& b : blocks) c += htilde / agent_dims[b.agent];
  return c;
}

PotentialSystem build_system(const Meag& meag, PotentialMode mode) {
  PotentialSystem sys;
  sys.mode = mode;
  sys.agent_dims = meag.dims.agent_dims;
  sys.agent_place = meag.dims.agent_place;
  sys.htilde = meag.dims.htilde;
  for (std::size_t b = 0; b < meag.dims.agent_count(); ++b) {
    PotentialBlock base;
    base.agent = b;
    base.group = meag.dims.agent_group[b];
    base.type_k = meag.dims.agent_type[b];
    if (mode == PotentialMode::kGroup) {
      base.player = 0;
      base.rhs = meag.agent_rows[b];
      sys.blocks.push_back(std::move(base));
    } else {
      for (std::size_t j = 0; j < meag.player_rows[b].size(); ++j) {
        PotentialBlock blk = base;
        blk.player = meag.group_offsets[base.group - 1] + j + 1;
        blk.rhs = meag.player_rows[b][j];
        sys.blocks.push_back(std::move(blk));
      }
    }
  }
  return sys;
}

Matrix lambda_block(std::span<const std::size_t> agent_dims, std::size_t target) {
  if (target >= agent_dims.size()) throw std::out_of_range("lambda target");
  Matrix acc = (target == 0) ? Matrix::ones_row(agent_dims[0])
                             : Matrix::identity(agent_dims[0]);
  for (std::size_t b = 1; b < agent_dims.size(); ++b) {
    acc = kron(acc, (b == target) ? Matrix::ones_row(agent_dims[b])
                                  : Matrix::identity(agent_dims[b]));
  }
  return acc;
}

namespace {

struct DigitSlices {
  std::size_t g = 1;     // target digit size
  std::size_t sp = 1;    // suffix place
  std::size_t pre = 1;   // htilde / (g * sp)
};

DigitSlices slices(const PotentialSystem& sys, std::size_t agent) {
  DigitSlices s;
  s.g = sys.agent_dims[agent];
  s.sp = sys.agent_place[agent];
  s.pre = sys.htilde / (s.g * s.sp);
  return s;
}

// out = digit-averaging projection of `in` for the given agent.
void apply_average(const PotentialSystem& sys, std::size_t agent,
                   const std::vector<double>& in, std::vector<double>& out) {
  const DigitSlices s = slices(sys, agent);
  const double inv = 1.0 / static_cast<double>(s.g);
  for (std::size_t hi = 0; hi < s.pre; ++hi) {
    const std::size_t off = hi * s.g * s.sp;
    for (std::size_t lo = 0; lo < s.sp; ++lo) {
      double sum = 0.0;
      for (std::size_t d = 0; d < s.g; ++d) sum += in[off + d * s.sp + lo];
      const double mean = sum * inv;
      for (std::size_t d = 0; d < s.g; ++d) out[off + d * s.sp + lo] = mean;
    }
  }
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

PotentialSolution solve(const PotentialSystem& sys, double tol) {
  PotentialSolution sol;
  sol.tolerance = tol;
  const std::size_t h = sys.htilde;
  const std::size_t nblocks = sys.blocks.size();
  if (nblocks == 0) throw std::invalid_argument("potential system has no blocks");

  // Deduplicate projections: in strong mode every member of a group shares
  // the same target agent, hence the same P_b.
  std::vector<std::size_t> agent_mult(sys.agent_dims.size(), 0);
  for (const auto& b : sys.blocks) ++agent_mult[b.agent];

  double rhs_norm2 = 0.0;
  for (const auto& b : sys.blocks) rhs_norm2 += dot(b.rhs, b.rhs);

  // c = sum_b (I - P_b) y_b
  std::vector<double> c(h, 0.0), tmp(h);
  for (const auto& b : sys.blocks) {
    apply_average(sys, b.agent, b.rhs, tmp);
    for (std::size_t i = 0; i < h; ++i) c[i] += b.rhs[i] - tmp[i];
  }

  const auto apply_m = [&](const std::vector<double>& x, std::vector<double>& out) {
    const double total = static_cast<double>(nblocks);
    for (std::size_t i = 0; i < h; ++i) out[i] = total * x[i];
    for (std::size_t a = 0; a < agent_mult.size(); ++a) {
      if (agent_mult[a] == 0) continue;
      apply_average(sys, a, x, tmp);
      const double w = static_cast<double>(agent_mult[a]);
      for (std::size_t i = 0; i < h; ++i) out[i] -= w * tmp[i];
    }
  };

  // CG on M x = c. M is positive semidefinite with spectrum inside
  // {0, 1, ..., B}, and c is orthogonal to the null space (constants), so
  // convergence takes about as many steps as there are distinct eigenvalues.
  std::vector<double> x(h, 0.0), rvec(c), p(c), mp(h);
  const double cnorm = std::sqrt(dot(c, c));
  const double cg_tol = 1e-13 * std::max(1.0, cnorm);
  double rr = dot(rvec, rvec);
  const std::size_t maxit = 8 * nblocks + 32;
  std::size_t it = 0;
  while (std::sqrt(rr) > cg_tol && it < maxit) {
    apply_m(p, mp);
    const double pmp = dot(p, mp);
    if (!(pmp > 0.0)) break;  // p in the null space; nothing left to reduce
    const double step = rr / pmp;
    for (std::size_t i = 0; i < h; ++i) {
      x[i] += step * p[i];
      rvec[i] -= step * mp[i];
    }
    const double rr_new = dot(rvec, rvec);
    const double beta = rr_new / rr;
    rr = rr_new;
    for (std::size_t i = 0; i < h; ++i) p[i] = rvec[i] + beta * p[i];
    ++it;
  }
  sol.cg_iterations = it;

  // Block unknowns at the CG point, then the closed-form gauge shift t* that
  // minimizes the full-system norm along the (1, -1, ..., -1) null direction.
  double sum_xi_blocks = 0.0, denom = static_cast<double>(h);
  std::vector<std::vector<double>> xi_blocks(nblocks);
  for (std::size_t b = 0; b < nblocks; ++b) {
    const DigitSlices s = slices(sys, sys.blocks[b].agent);
    const std::size_t reduced = h / s.g;
    xi_blocks[b].assign(reduced, 0.0);
    const auto& y = sys.blocks[b].rhs;
    const double inv = 1.0 / static_cast<double>(s.g);
    for (std::size_t hi = 0; hi < s.pre; ++hi) {
      for (std::size_t lo = 0; lo < s.sp; ++lo) {
        double acc = 0.0;
        for (std::size_t d = 0; d < s.g; ++d) {
          const std::size_t idx = hi * s.g * s.sp + d * s.sp + lo;
          acc += y[idx] - x[idx];
        }
        xi_blocks[b][hi * s.sp + lo] = acc * inv;
      }
    }
    for (double v : xi_blocks[b]) sum_xi_blocks += v;
    denom += static_cast<double>(reduced);
  }
  double xsum = 0.0;
  for (double v : x) xsum += v;
  const double tshift = (sum_xi_blocks - xsum) / denom;

  sol.potential.assign(h, 0.0);
  for (std::size_t i = 0; i < h; ++i) sol.potential[i] = x[i] + tshift;

  double res2 = 0.0;
  for (std::size_t b = 0; b < nblocks; ++b) {
    const DigitSlices s = slices(sys, sys.blocks[b].agent);
    const auto& y = sys.blocks[b].rhs;
    for (std::size_t hi = 0; hi < s.pre; ++hi) {
      for (std::size_t lo = 0; lo < s.sp; ++lo) {
        const double xi_b = xi_blocks[b][hi * s.sp + lo] - tshift;
        for (std::size_t d = 0; d < s.g; ++d) {
          const std::size_t idx = hi * s.g * s.sp + d * s.sp + lo;
          const double r = sol.potential[idx] + xi_b - y[idx];
          res2 += r * r;
        }
      }
    }
  }
  sol.residual = std::sqrt(res2) / std::max(1.0, std::sqrt(rhs_norm2));
  sol.solvable = std::isfinite(sol.residual) && sol.residual <= tol;
  sol.note = "potential is defined up to an additive constant; minimum-norm "
             "representative reported";
  return sol;
}

PotentialSolution solve_dense_reference(const PotentialSystem& sys, double tol) {
  PotentialSolution sol;
  sol.tolerance = tol;
  const std::size_t h = sys.htilde;
  const std::size_t rows = sys.rows();
  const std::size_t cols = sys.cols();
  if (rows == 0) throw std::invalid_argument("potential system has no blocks");
  if (rows * cols > (std::size_t{1} << 26)) {
    throw std::length_error("dense reference is for small systems");
  }

  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(rows),
                                            static_cast<Eigen::Index>(cols));
  Eigen::VectorXd rhs(static_cast<Eigen::Index>(rows));
  std::size_t colbase = h;
  for (std::size_t b = 0; b < sys.blocks.size(); ++b) {
    const DigitSlices s = slices(sys, sys.blocks[b].agent);
    const std::size_t rowbase = b * h;
    for (std::size_t idx = 0; idx < h; ++idx) {
      a(rowbase + idx, idx) = 1.0;
      // Lambda^T: full index couples to its digit-deleted reduced index.
      const std::size_t hi = idx / (s.g * s.sp);
      const std::size_t lo = idx % s.sp;
      a(rowbase + idx, colbase + hi * s.sp + lo) = 1.0;
      rhs(static_cast<Eigen::Index>(rowbase + idx)) = sys.blocks[b].rhs[idx];
    }
    colbase += h / s.g;
  }

  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(a);
  const Eigen::VectorXd xfull = cod.solve(rhs);
  sol.potential.assign(xfull.data(), xfull.data() + h);
  const double denom = std::max(1.0, rhs.norm());
  sol.residual = (a * xfull - rhs).norm() / denom;
  sol.solvable = std::isfinite(sol.residual) && sol.residual <= tol;
  sol.note = "dense reference (complete orthogonal decomposition)";
  return sol;
}

PotentialCheck verify_potential(const Meag& meag, PotentialMode mode,
                                std::span<const double> potential, double tol,
                                bool parallel) {
  const auto& dims = meag.dims;
  const std::size_t h = dims.htilde;
  if (potential.size() != h) throw std::invalid_argument("potential length mismatch");

  double scale = 1.0;
  for (double v : potential) scale = std::max(scale, std::abs(v));
  for (std::size_t b = 0; b < dims.agent_count(); ++b) {
    if (mode == PotentialMode::kGroup) {
      for (double v : meag.agent_rows[b]) scale = std::max(scale, std::abs(v));
    } else {
      for (const auto& row : meag.player_rows[b]) {
        for (double v : row) scale = std::max(scale, std::abs(v));
      }
    }
  }

  double worst = 0.0;
  for (std::size_t b = 0; b < dims.agent_count(); ++b) {
    const std::size_t g = dims.agent_dims[b];
    const std::size_t sp = dims.agent_place[b];
    const std::size_t pre = h / (g * sp);
    std::vector<const std::vector<double>*> rows;
    if (mode == PotentialMode::kGroup) {
      rows.push_back(&meag.agent_rows[b]);
    } else {
      for (const auto& row : meag.player_rows[b]) rows.push_back(&row);
    }
    const std::ptrdiff_t pres = static_cast<std::ptrdiff_t>(pre);
    double agent_worst = 0.0;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) reduction(max : agent_worst) if (parallel)
#endif
    for (std::ptrdiff_t his = 0; his < pres; ++his) {
      const std::size_t hi = static_cast<std::size_t>(his);
      for (std::size_t lo = 0; lo < sp; ++lo) {
        const std::size_t base = hi * g * sp + lo;
        for (std::size_t d1 = 0; d1 < g; ++d1) {
          const std::size_t i1 = base + d1 * sp;
          for (std::size_t d2 = d1 + 1; d2 < g; ++d2) {
            const std::size_t i2 = base + d2 * sp;
            const double df = potential[i2] - potential[i1];
            for (const auto* row : rows) {
              const double v = std::abs(((*row)[i2] - (*row)[i1]) - df);
              agent_worst = std::max(agent_worst, v);
            }
          }
        }
      }
    }
    worst = std::max(worst, agent_worst);
  }
  (void)parallel;

  PotentialCheck check;
  check.max_violation = worst / scale;
  check.ok = check.max_violation <= tol;
  return check;
}

}  // namespace mbg
