#pragma once

#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "mbg/potential.hpp"

namespace mbg {

struct ArgmaxResult {
  std::vector<std::size_t> alphas;  // ascending
  double value = -std::numeric_limits<double>::infinity();
};

// All indices whose value lies within tie_tol of the maximum.
ArgmaxResult argmax_set(std::span<const double> row, double tie_tol = 1e-9);

// Pure equilibria of the agent game by exhaustive unilateral-deviation
// checks. In group mode an agent optimizes its averaged row; in strong mode
// its action must be simultaneously optimal for every member row. A
// deviation counts as improving only when it gains more than 1e-10 times the
// payoff scale.
std::vector<std::size_t> ne_oracle(const Meag& meag, PotentialMode mode,
                                   bool parallel = true);

// Equilibria of the original game computed straight from the game
// description, with no agent-game machinery: for every strategy profile,
// every group and every type, compare the joint-prior-weighted payoff of
// each candidate action.
// Types with zero mass constrain nothing. Profiles are reported through the
// same mixed-radix encoding gamma uses, ascending.
std::vector<std::size_t> mbne_oracle(const MbgSpec& spec, PotentialMode mode,
                                     bool parallel = true);

struct SolveOptions {
  PotentialMode mode = PotentialMode::kGroup;
  double tol = 1e-8;
  double tie_tol = 1e-9;
  enum class Oracle { kAuto, kOn, kOff };
  Oracle oracle = Oracle::kAuto;
  // The oracles enumerate all htilde profiles; auto runs them only below the
  // auto cap, an explicit "on" is still refused above the hard cap.
  std::size_t oracle_auto_cap = std::size_t{1} << 12;
  std::size_t oracle_hard_cap = std::size_t{1} << 14;
  BuildPath path = BuildPath::kDirectParallel;
  bool parallel = true;
  SizeCaps caps{};
};

struct EquilibriumReport {
  PotentialMode mode = PotentialMode::kGroup;
  double tol = 1e-8;
  double tie_tol = 1e-9;

  bool potential_solvable = false;
  double residual = std::numeric_limits<double>::infinity();
  std::size_t cg_iterations = 0;
  std::string solver_note;
  std::vector<double> potential;   // minimum-norm row, empty when unsolvable
  double potential_at_first = 0.0; // value at alpha = 1, the display gauge

  ArgmaxResult argmax;             // empty when unsolvable
  std::vector<StrategyProfile> argmax_strategies;

  bool verified = false;           // exhaustive identity check ran
  PotentialCheck verify;

  bool oracle_ran = false;
  std::vector<std::size_t> oracle_ne;    // agent-game equilibria
  std::vector<std::size_t> oracle_mbne;  // original-game equilibria, encoded
  std::vector<StrategyProfile> mbne_strategies;
  bool correspondence_ok = false;  // the two oracle sets coincide
  // When both the potential route and the oracle ran: set differences that
  // should be empty for a potential game (reported, never assumed).
  std::vector<std::size_t> ne_not_argmax;
  std::vector<std::size_t> argmax_not_ne;

  MeagDims dims;
};

// Full pipeline: transform, assemble and solve the potential equations,
// extract the argmax set, verify the potential identity, and (size
// permitting) cross-check against the brute-force oracles. Throws
// std::length_error when an explicit oracle request exceeds the hard cap.
EquilibriumReport solve_mbne(const MbgSpec& spec, const SolveOptions& opts = {});

}  // namespace mbg
