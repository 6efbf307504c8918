#include "mbg/game.hpp"

#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace mbg {

std::size_t MbgSpec::type_profiles() const { return checked_pow(num_types, num_players); }

std::size_t MbgSpec::action_profiles() const { return checked_pow(num_actions, num_players); }

std::size_t MbgSpec::type_action_profiles() const {
  return checked_pow(checked_mul(num_types, num_actions), num_players);
}

std::size_t MbgSpec::group_type_count(std::size_t group) const {
  return checked_pow(num_types, group_sizes.at(group - 1));
}

std::size_t MbgSpec::group_action_count(std::size_t group) const {
  return checked_pow(num_actions, group_sizes.at(group - 1));
}

std::vector<std::size_t> MbgSpec::group_offsets() const {
  std::vector<std::size_t> off(group_sizes.size() + 1, 0);
  for (std::size_t l = 0; l < group_sizes.size(); ++l) off[l + 1] = off[l] + group_sizes[l];
  return off;
}

std::size_t MbgSpec::group_of_player(std::size_t player) const {
  std::size_t seen = 0;
  for (std::size_t l = 0; l < group_sizes.size(); ++l) {
    seen += group_sizes[l];
    if (player <= seen) return l + 1;
  }
  throw std::out_of_range("player index past the last group");
}

namespace {

const char* kind_name(ValidationIssue::Kind k) {
  switch (k) {
    case ValidationIssue::Kind::kStructure: return "structure";
    case ValidationIssue::Kind::kDimensionOverflow: return "dimension-overflow";
    case ValidationIssue::Kind::kSizeCap: return "size-cap";
    case ValidationIssue::Kind::kPrior: return "prior";
    case ValidationIssue::Kind::kPayoff: return "payoff";
    case ValidationIssue::Kind::kLabels: return "labels";
  }
  return "?";
}

}  // namespace

std::string ValidationReport::to_string() const {
  if (ok()) return "valid";
  std::ostringstream os;
  for (const auto& issue : issues) {
    os << "[" << kind_name(issue.kind) << "] " << issue.message << "\n";
  }
  return os.str();
}

ValidationReport validate(const MbgSpec& spec, const SizeCaps& caps) {
  ValidationReport rep;
  auto add = [&rep](ValidationIssue::Kind k, std::string msg) {
    rep.issues.push_back({k, std::move(msg)});
  };

  if (spec.num_players == 0) add(ValidationIssue::Kind::kStructure, "no players");
  if (spec.num_types == 0) add(ValidationIssue::Kind::kStructure, "no types");
  if (spec.num_actions == 0) add(ValidationIssue::Kind::kStructure, "no actions");
  if (spec.group_sizes.empty()) {
    add(ValidationIssue::Kind::kStructure, "no groups");
  } else {
    std::size_t total = 0;
    for (std::size_t l = 0; l < spec.group_sizes.size(); ++l) {
      if (spec.group_sizes[l] == 0) {
        add(ValidationIssue::Kind::kStructure,
            "group " + std::to_string(l + 1) + " is empty");
      }
      total += spec.group_sizes[l];
    }
    if (total != spec.num_players) {
      add(ValidationIssue::Kind::kStructure,
          "group sizes sum to " + std::to_string(total) + ", expected " +
              std::to_string(spec.num_players) + " players");
    }
  }
  if (!rep.ok()) return rep;  // later checks assume a coherent shape

  std::size_t etotal = 0, ctotal = 0, htilde = 0;
  try {
    etotal = spec.type_profiles();
    ctotal = spec.type_action_profiles();
    htilde = 1;
    for (std::size_t l = 1; l <= spec.num_groups(); ++l) {
      htilde = checked_mul(htilde,
                           checked_pow(spec.group_action_count(l), spec.group_type_count(l)));
    }
  } catch (const std::overflow_error&) {
    add(ValidationIssue::Kind::kDimensionOverflow,
        "profile space exceeds machine integer range");
    return rep;
  }

  if (etotal > caps.max_type_profiles) {
    add(ValidationIssue::Kind::kSizeCap,
        "type profile count " + std::to_string(etotal) + " exceeds cap " +
            std::to_string(caps.max_type_profiles));
  }
  if (htilde > caps.max_agent_profiles) {
    add(ValidationIssue::Kind::kSizeCap,
        "agent strategy profile count " + std::to_string(htilde) + " exceeds cap " +
            std::to_string(caps.max_agent_profiles));
  }

  if (spec.prior.size() != etotal) {
    add(ValidationIssue::Kind::kPrior,
        "prior has " + std::to_string(spec.prior.size()) + " entries, expected " +
            std::to_string(etotal));
  } else {
    double sum = 0.0;
    bool negative = false, finite = true;
    for (double p : spec.prior) {
      if (!std::isfinite(p)) finite = false;
      if (p < 0.0) negative = true;
      sum += p;
    }
    if (!finite) add(ValidationIssue::Kind::kPrior, "prior has non-finite entries");
    if (negative) add(ValidationIssue::Kind::kPrior, "prior has negative entries");
    if (finite && std::abs(sum - 1.0) > 1e-12) {
      std::ostringstream os;
      os << "prior sums to " << sum << ", expected 1";
      add(ValidationIssue::Kind::kPrior, os.str());
    }
  }

  if (spec.payoffs.size() != spec.num_players) {
    add(ValidationIssue::Kind::kPayoff,
        "expected " + std::to_string(spec.num_players) + " payoff rows, got " +
            std::to_string(spec.payoffs.size()));
  } else {
    for (std::size_t i = 0; i < spec.payoffs.size(); ++i) {
      if (spec.payoffs[i].size() != ctotal) {
        add(ValidationIssue::Kind::kPayoff,
            "payoff row " + std::to_string(i + 1) + " has " +
                std::to_string(spec.payoffs[i].size()) + " entries, expected " +
                std::to_string(ctotal));
        continue;
      }
      for (double v : spec.payoffs[i]) {
        if (!std::isfinite(v)) {
          add(ValidationIssue::Kind::kPayoff,
              "payoff row " + std::to_string(i + 1) + " has non-finite entries");
          break;
        }
      }
    }
  }

  if (!spec.player_labels.empty() && spec.player_labels.size() != spec.num_players) {
    add(ValidationIssue::Kind::kLabels, "player label count mismatch");
  }
  auto check_per_player = [&](const std::vector<std::vector<std::string>>& labels,
                              std::size_t want, const char* what) {
    if (labels.empty()) return;
    if (labels.size() != spec.num_players) {
      add(ValidationIssue::Kind::kLabels, std::string(what) + " label rows mismatch");
      return;
    }
    for (const auto& row : labels) {
      if (row.size() != want) {
        add(ValidationIssue::Kind::kLabels, std::string(what) + " label count mismatch");
        return;
      }
    }
  };
  check_per_player(spec.type_labels, spec.num_types, "type");
  check_per_player(spec.action_labels, spec.num_actions, "action");

  return rep;
}

std::vector<std::size_t> group_type_radices(const MbgSpec& spec) {
  std::vector<std::size_t> radices(spec.num_groups());
  for (std::size_t l = 1; l <= spec.num_groups(); ++l) {
    radices[l - 1] = spec.group_type_count(l);
  }
  return radices;
}

double prior_at(const MbgSpec& spec, std::span<const std::size_t> group_types) {
  const auto radices = group_type_radices(spec);
  return spec.prior[lex_encode(radices, group_types) - 1];
}

double marginal(const MbgSpec& spec, const GroupType& gt) {
  const auto radices = group_type_radices(spec);
  if (gt.group < 1 || gt.group > radices.size()) throw std::out_of_range("group index");
  if (gt.k < 1 || gt.k > radices[gt.group - 1]) throw std::out_of_range("group type index");
  std::vector<std::size_t> digits(radices.size(), 1);
  digits[gt.group - 1] = gt.k;
  double sum = 0.0;
  // Walk the other groups' digits with the target digit pinned.
  while (true) {
    sum += spec.prior[lex_encode(radices, digits) - 1];
    bool advanced = false;
    for (std::size_t j = radices.size(); j-- > 0;) {
      if (j == gt.group - 1) continue;
      if (digits[j] < radices[j]) {
        ++digits[j];
        advanced = true;
        break;
      }
      digits[j] = 1;
    }
    if (!advanced) break;
  }
  return sum;
}

double conditional(const MbgSpec& spec, const GroupType& gt, std::size_t others_index) {
  const double m = marginal(spec, gt);
  if (!(m > 0.0)) {
    throw std::domain_error("conditional on a zero-probability group type");
  }
  const auto radices = group_type_radices(spec);
  std::vector<std::size_t> other_radices;
  other_radices.reserve(radices.size() - 1);
  for (std::size_t l = 0; l < radices.size(); ++l) {
    if (l != gt.group - 1) other_radices.push_back(radices[l]);
  }
  const auto other_digits = lex_decode(others_index, other_radices);
  std::vector<std::size_t> digits(radices.size());
  std::size_t pos = 0;
  for (std::size_t l = 0; l < radices.size(); ++l) {
    digits[l] = (l == gt.group - 1) ? gt.k : other_digits[pos++];
  }
  return spec.prior[lex_encode(radices, digits) - 1] / m;
}

double payoff(const MbgSpec& spec, std::size_t player, std::size_t t, std::size_t a) {
  const std::size_t gm = spec.action_profiles();
  if (player < 1 || player > spec.num_players) throw std::out_of_range("player index");
  if (t < 1 || t > spec.type_profiles()) throw std::out_of_range("type profile index");
  if (a < 1 || a > gm) throw std::out_of_range("action profile index");
  return spec.payoffs[player - 1][(t - 1) * gm + (a - 1)];
}

double group_payoff(const MbgSpec& spec, std::size_t group, std::size_t t, std::size_t a) {
  const auto offsets = spec.group_offsets();
  if (group < 1 || group > spec.num_groups()) throw std::out_of_range("group index");
  double sum = 0.0;
  for (std::size_t p = offsets[group - 1]; p < offsets[group]; ++p) {
    sum += payoff(spec, p + 1, t, a);
  }
  return sum / static_cast<double>(spec.group_sizes[group - 1]);
}

MbgSpec auction_fixture(const std::vector<std::vector<double>>& evaluations,
                        const std::vector<std::vector<double>>& bids,
                        const std::vector<double>& prior,
                        const std::vector<std::size_t>& group_sizes,
                        TieRule tie_rule) {
  const std::size_t m = evaluations.size();
  if (m == 0 || bids.size() != m) {
    throw std::invalid_argument("auction: need one evaluation and bid row per player");
  }
  const std::size_t e = evaluations[0].size();
  const std::size_t g = bids[0].size();
  for (const auto& row : evaluations) {
    if (row.size() != e) throw std::invalid_argument("auction: ragged evaluations");
  }
  for (const auto& row : bids) {
    if (row.size() != g) throw std::invalid_argument("auction: ragged bids");
  }
  if (e == 0 || g == 0) throw std::invalid_argument("auction: empty type or action set");

  MbgSpec spec;
  spec.num_players = m;
  spec.num_types = e;
  spec.num_actions = g;
  spec.group_sizes = group_sizes;
  spec.prior = prior;

  const std::size_t tcount = spec.type_profiles();
  const std::size_t acount = spec.action_profiles();
  const std::vector<std::size_t> tradix(m, e), aradix(m, g);

  // Winner and payment per bid profile; winner == m encodes "tie, nobody wins".
  std::vector<std::size_t> winner(acount);
  std::vector<double> payment(acount);
  std::vector<std::size_t> adig(m, 1);
  for (std::size_t a = 1; a <= acount; ++a) {
    double best = bids[0][adig[0] - 1];
    std::size_t who = 0, nbest = 1;
    for (std::size_t p = 1; p < m; ++p) {
      const double b = bids[p][adig[p] - 1];
      if (b > best) {
        best = b;
        who = p;
        nbest = 1;
      } else if (b == best) {
        ++nbest;
      }
    }
    if (nbest > 1) {
      switch (tie_rule) {
        case TieRule::kError: {
          std::ostringstream os;
          os << "top-bid tie reachable at bid profile " << a << " (bid " << best << ")";
          throw std::invalid_argument(os.str());
        }
        case TieRule::kLowestIndexWins:
          // `who` already holds the first player attaining the max.
          break;
        case TieRule::kNoWinner:
          who = m;  // sentinel
          break;
      }
    }
    winner[a - 1] = who;
    payment[a - 1] = best;  // the winner pays their own (top) bid
    next_digits(aradix, adig);
  }

  spec.payoffs.assign(m, std::vector<double>(spec.type_action_profiles(), 0.0));
  std::vector<std::size_t> tdig(m, 1);
  for (std::size_t t = 1; t <= tcount; ++t) {
    for (std::size_t a = 1; a <= acount; ++a) {
      const std::size_t w = winner[a - 1];
      if (w < m) {
        spec.payoffs[w][(t - 1) * acount + (a - 1)] =
            evaluations[w][tdig[w] - 1] - payment[a - 1];
      }
    }
    next_digits(tradix, tdig);
  }

  auto fmt = [](double v) {
    std::ostringstream os;
    os << v;
    return os.str();
  };
  spec.type_labels.resize(m);
  spec.action_labels.resize(m);
  for (std::size_t p = 0; p < m; ++p) {
    for (double v : evaluations[p]) spec.type_labels[p].push_back("value=" + fmt(v));
    for (double v : bids[p]) spec.action_labels[p].push_back("bid=" + fmt(v));
  }
  return spec;
}

MbgSpec example_auction() {
  return auction_fixture(
      {{100, 110}, {108, 93}, {78, 95}},
      {{57, 68}, {70, 90}, {30, 80}},
      {0.125, 0.05, 0.03, 0.125, 0.2, 0.02, 0.25, 0.2},
      {1, 2});
}

MbgSpec example_auction_bad_prior() {
  return auction_fixture(
      {{100, 110}, {108, 93}, {78, 95}},
      {{57, 68}, {70, 90}, {30, 80}},
      {0.125, 0.05, 0.03, 0.125, 0.2, 0.2, 0.25, 0.2},
      {1, 2});
}

}  // namespace mbg
