#pragma once

#include <cstddef>
#include <vector>

#include "mbg/game.hpp"
#include "mbg/stp.hpp"

namespace mbg {

// Shape of the ex-ante agent game induced by an MbgSpec: one agent per
// (group, joint group type), ordered by group then type; agent (l, k) picks
// one of g_l = g^{m_l} joint group actions. A pure strategy profile of all
// agents is encoded as alpha in [1, htilde], htilde = prod_l g_l^{e_l}.
struct MeagDims {
  std::vector<std::size_t> group_type_counts;    // e_l = e^{m_l}
  std::vector<std::size_t> group_action_counts;  // g_l = g^{m_l}
  std::vector<std::size_t> agent_dims;           // g_l repeated e_l times
  std::vector<std::size_t> agent_group;          // 1-based group of each agent
  std::vector<std::size_t> agent_type;           // its k
  std::vector<std::size_t> group_first_agent;    // 0-based position of (l, 1)
  std::vector<std::size_t> agent_place;          // suffix products of agent_dims
  std::size_t htilde = 1;

  static MeagDims from_spec(const MbgSpec& spec);
  std::size_t agent_count() const { return agent_dims.size(); }
  std::size_t agent_pos(std::size_t group, std::size_t k) const;  // 0-based
  // Digit (1-based action) of agent at 0-based position b inside alpha.
  std::size_t digit(std::size_t alpha, std::size_t b) const;
  // Alpha with agent b's digit replaced by d.
  std::size_t with_digit(std::size_t alpha, std::size_t b, std::size_t d) const;
};

// A complete-information strategy: s[l][k] is the joint action (1-based,
// <= g_{l+1}) group l+1 plays at its joint type k+1.
using StrategyProfile = std::vector<std::vector<std::size_t>>;

// The bijection between strategy profiles and agent action profiles: gamma
// flattens s in agent order and reads it as a mixed-radix index.
std::size_t gamma(const MeagDims& dims, const StrategyProfile& s);
StrategyProfile gamma_inverse(const MeagDims& dims, std::size_t alpha);

// Ex-ante payoff of one group member as seen by agent (l, k) under profile
// alpha: the joint-prior-weighted sum over the other groups' types. Weights
// are joint (not conditional) probabilities, so zero-mass types contribute
// nothing and no division occurs.
double agent_payoff_direct(const MbgSpec& spec, const MeagDims& dims,
                           const GroupType& gt, std::size_t player,
                           std::size_t alpha);

// --- structure-matrix route --------------------------------------------

// g_l x e_l logical matrix whose k-th column is group l's action at its k-th
// type under alpha, extracted by composing the block selector for group l
// with the per-type selector, applied to delta_htilde^alpha.
Matrix e_matrix(const MeagDims& dims, std::size_t alpha, std::size_t group);

// Phi(alpha) of shape (e^m * g^m) x e^m: column T is the joint (type; action)
// indicator delta_T (x) delta_{A(T)}. Built as (I (x) kron_l E) stp O_{e^m}.
Matrix phi(const MeagDims& dims, std::size_t alpha);

// Xi(l, k) = I_{prod_{j<l} e_j} (x) delta_{e_l}^k delta_{e_l}^k^T; under stp
// against an e^m column it zeroes every type profile whose group-l digit
// differs from k.
Matrix xi_projection(const MeagDims& dims, const GroupType& gt);

// theta(l, k, i, alpha) as an e^m x 1 column: entry T is c_i(T, A(T)) if
// group l holds type k at T, else 0. The prior row times theta is the
// ex-ante payoff.
Matrix theta(const MbgSpec& spec, const MeagDims& dims, const GroupType& gt,
             std::size_t player, std::size_t alpha);

// Group-averaged variant over the members of gt.group.
Matrix psi(const MbgSpec& spec, const MeagDims& dims, const GroupType& gt,
           std::size_t alpha);

// --- assembled game ------------------------------------------------------

enum class BuildPath {
  kDirectSerial,    // reference sweep, no threads
  kDirectParallel,  // same sweep, OpenMP over alpha
  kStructure,       // structure-matrix composition (verification scale)
};

struct Meag {
  MeagDims dims;
  std::vector<std::size_t> group_offsets;  // first player (0-based) per group
  // player_rows[b][j]: ex-ante payoff row (one column per alpha) of the j-th
  // member of agent b's group, as seen by agent b.
  std::vector<std::vector<std::vector<double>>> player_rows;
  // agent_rows[b]: the group-averaged row agent b optimizes.
  std::vector<std::vector<double>> agent_rows;
};

// Builds every ex-ante payoff row. The structure path materializes the
// selector matrices, so it is capped at htilde <= 2^12; the direct paths run
// up to caps.max_agent_profiles.
Meag build_meag(const MbgSpec& spec, BuildPath path = BuildPath::kDirectParallel,
                const SizeCaps& caps = {});

}  // namespace mbg
