#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "mbg/meag.hpp"

namespace mbg {

enum class PotentialMode {
  kGroup,   // one equation block per agent, group-averaged payoffs
  kStrong,  // one block per (agent, group member), individual payoffs
};

// One row block of the stacked linear system
//   [ I_htilde  Lambda_b^T ] [ xi_0 ; xi_b ] = y_b,
// where Lambda_b is the Kronecker product over agents of I_{g_j} with
// 1_{g}^T in the target agent's slot, so Lambda_b deletes that digit.
struct PotentialBlock {
  std::size_t agent = 0;   // 0-based target agent
  std::size_t group = 1;   // label: the agent's group
  std::size_t type_k = 1;  // label: the agent's joint type
  std::size_t player = 0;  // 1-based player in strong mode, 0 in group mode
  std::vector<double> rhs; // length htilde
};

struct PotentialSystem {
  PotentialMode mode = PotentialMode::kGroup;
  std::vector<std::size_t> agent_dims;
  std::vector<std::size_t> agent_place;  // suffix products
  std::size_t htilde = 1;
  std::vector<PotentialBlock> blocks;

  std::size_t rows() const { return blocks.size() * htilde; }
  std::size_t cols() const;  // htilde + sum_b htilde / g_b
};

PotentialSystem build_system(const Meag& meag, PotentialMode mode);

// Dense Lambda for one target agent (tests and the dense reference): built as
// the literal Kronecker composition, shape (htilde/g_target) x htilde.
Matrix lambda_block(std::span<const std::size_t> agent_dims, std::size_t target);

struct PotentialSolution {
  bool solvable = false;
  // Relative residual of the full stacked system at the minimizer.
  double residual = std::numeric_limits<double>::infinity();
  double tolerance = 1e-8;
  std::vector<double> potential;  // xi_0, minimum-norm; defined up to a constant
  std::size_t cg_iterations = 0;
  std::string note;
};

// Minimum-norm least-squares solution of the stacked system. Eliminating the
// xi_b (whose Lambda_b have orthogonal rows: Lambda_b Lambda_b^T = g_b I)
// leaves reduced normal equations sum_b (I - P_b) xi_0 = sum_b (I - P_b) y_b
// with P_b the target-digit averaging projection; conjugate gradients solve
// them quickly since the operator's spectrum is {0, 1, ..., B}. A closed-form
// shift along the all-ones null direction then restores the minimum-norm
// solution of the full system.
PotentialSolution solve(const PotentialSystem& sys, double tol = 1e-8);

// Same minimizer via a dense complete orthogonal decomposition of the stacked
// matrix; cross-check at small sizes only.
PotentialSolution solve_dense_reference(const PotentialSystem& sys, double tol = 1e-8);

struct PotentialCheck {
  bool ok = false;
  double max_violation = 0.0;  // relative to max(1, payoff and potential scale)
};

// Exhaustive check of the defining identity: for every agent (and, in strong
// mode, every group member) and every unilateral digit change, the payoff
// difference must equal the potential difference.
PotentialCheck verify_potential(const Meag& meag, PotentialMode mode,
                                std::span<const double> potential,
                                double tol = 1e-8, bool parallel = true);

}  // namespace mbg
