#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "mbg/matrix.hpp"

namespace mbg {

// A finite incomplete-information game whose players are partitioned into
// contiguous groups sharing an averaged payoff. Every player has e types and
// g actions. The prior is a row over the e^m joint type profiles, each
// player's payoff a row over the (e*g)^m joint (type; action) profiles, both
// lexicographic with the last coordinate fastest and the type block major.
//
// Because groups are contiguous, the m-digit radix-e order coincides with the
// r-digit order whose l-th digit is group l's joint type (radix e^{m_l});
// everything group-level below leans on that.
struct MbgSpec {
  std::size_t num_players = 0;              // m
  std::vector<std::size_t> group_sizes;     // m_1..m_r, contiguous partition
  std::size_t num_types = 0;                // e, per player
  std::size_t num_actions = 0;              // g, per player
  std::vector<double> prior;                // length e^m
  std::vector<std::vector<double>> payoffs; // m rows, each length (e*g)^m

  // Optional display labels; empty means unnamed.
  std::vector<std::string> player_labels;
  std::vector<std::vector<std::string>> type_labels;    // per player, length e
  std::vector<std::vector<std::string>> action_labels;  // per player, length g

  std::size_t num_groups() const { return group_sizes.size(); }
  std::size_t type_profiles() const;        // e^m
  std::size_t action_profiles() const;      // g^m
  std::size_t type_action_profiles() const; // (e*g)^m
  std::size_t group_type_count(std::size_t group) const;    // e^{m_l}
  std::size_t group_action_count(std::size_t group) const;  // g^{m_l}
  // First player (0-based) of each group plus a trailing sentinel m.
  std::vector<std::size_t> group_offsets() const;
  std::size_t group_of_player(std::size_t player) const;  // 1-based both ways
};

struct SizeCaps {
  std::size_t max_type_profiles = std::size_t{1} << 20;
  std::size_t max_agent_profiles = std::size_t{1} << 20;
};

struct ValidationIssue {
  enum class Kind {
    kStructure,  // player/group/type/action counts inconsistent
    kDimensionOverflow,
    kSizeCap,
    kPrior,      // wrong length, negative mass, doesn't sum to 1
    kPayoff,     // wrong shape or non-finite entries
    kLabels,
  };
  Kind kind;
  std::string message;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  bool ok() const { return issues.empty(); }
  std::string to_string() const;
};

ValidationReport validate(const MbgSpec& spec, const SizeCaps& caps = {});

// Group l holding its k-th joint type tuple (k lexicographic over the
// members' types, 1-based, k <= e^{m_l}).
struct GroupType {
  std::size_t group = 1;
  std::size_t k = 1;
};

// Radices of the per-group view of the type space: (e^{m_1}, ..., e^{m_r}).
std::vector<std::size_t> group_type_radices(const MbgSpec& spec);

// Prior entry for a full per-group type tuple (r digits, 1-based).
double prior_at(const MbgSpec& spec, std::span<const std::size_t> group_types);

// Prior mass of group l holding joint type k.
double marginal(const MbgSpec& spec, const GroupType& gt);

// p(T_{-l} | T_l = k): others_index runs lexicographically over the remaining
// groups' joint types in group order. Throws if the marginal is zero.
double conditional(const MbgSpec& spec, const GroupType& gt, std::size_t others_index);

// Payoff of player i (1-based) at joint type profile t (over e^m) and joint
// action profile a (over g^m), both 1-based lexicographic indices.
double payoff(const MbgSpec& spec, std::size_t player, std::size_t t, std::size_t a);

// Average payoff over group l's members at (t, a).
double group_payoff(const MbgSpec& spec, std::size_t group, std::size_t t, std::size_t a);

enum class TieRule {
  kError,           // refuse to build a game where a top-bid tie is reachable
  kLowestIndexWins,
  kNoWinner,        // everyone gets zero on a tie
};

// First-price sealed-bid auction game: player p with type k values the item
// at evaluations[p][k] and action j bids bids[p][j]. The strictly highest
// bidder wins, paying their own bid; losers get zero. Winning depends on the
// bid profile only, so reachable ties can be detected by scanning the g^m
// bid profiles once.
MbgSpec auction_fixture(const std::vector<std::vector<double>>& evaluations,
                        const std::vector<std::vector<double>>& bids,
                        const std::vector<double>& prior,
                        const std::vector<std::size_t>& group_sizes,
                        TieRule tie_rule = TieRule::kError);

// The two-group three-player auction used as the bundled demo and in tests.
MbgSpec example_auction();
// Same game with an unnormalized prior variant (mass 1.18); must fail
// validation.
MbgSpec example_auction_bad_prior();

}  // namespace mbg
