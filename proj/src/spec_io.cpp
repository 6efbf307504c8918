#include "mbg/spec_io.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace mbg {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

namespace {

double parse_decimal(const std::string& s) {
  const char* begin = s.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end == begin || end != begin + s.size()) {
    throw SpecParseError("unparseable decimal: '" + s + "'");
  }
  return v;
}

const nlohmann::json& require(const nlohmann::json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end()) throw SpecParseError(std::string("missing field: ") + key);
  return *it;
}

std::size_t require_count(const nlohmann::json& j, const char* key) {
  const auto& v = require(j, key);
  if (!v.is_number_unsigned() || v.get<std::uint64_t>() == 0) {
    throw SpecParseError(std::string(key) + " must be a positive integer");
  }
  return v.get<std::size_t>();
}

}  // namespace

nlohmann::json spec_to_json(const MbgSpec& spec) {
  nlohmann::json j;
  j["format"] = "mbg-spec/1";
  j["players"] = spec.num_players;
  j["groups"] = spec.group_sizes;
  j["types"] = spec.num_types;
  j["actions"] = spec.num_actions;
  nlohmann::json prior = nlohmann::json::array();
  for (double p : spec.prior) prior.push_back(format_double(p));
  j["prior"] = std::move(prior);
  j["payoffs"] = spec.payoffs;
  if (!spec.player_labels.empty() || !spec.type_labels.empty() ||
      !spec.action_labels.empty()) {
    nlohmann::json labels;
    if (!spec.player_labels.empty()) labels["players"] = spec.player_labels;
    if (!spec.type_labels.empty()) labels["types"] = spec.type_labels;
    if (!spec.action_labels.empty()) labels["actions"] = spec.action_labels;
    j["labels"] = std::move(labels);
  }
  return j;
}

MbgSpec spec_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw SpecParseError("spec file must be a JSON object");
  const auto& fmt = require(j, "format");
  if (!fmt.is_string() || fmt.get<std::string>() != "mbg-spec/1") {
    throw SpecParseError("unsupported format tag");
  }
  MbgSpec spec;
  spec.num_players = require_count(j, "players");
  spec.num_types = require_count(j, "types");
  spec.num_actions = require_count(j, "actions");
  const auto& groups = require(j, "groups");
  if (!groups.is_array() || groups.empty()) {
    throw SpecParseError("groups must be a non-empty array");
  }
  for (const auto& g : groups) {
    if (!g.is_number_unsigned()) throw SpecParseError("group sizes must be unsigned");
    spec.group_sizes.push_back(g.get<std::size_t>());
  }
  const auto& prior = require(j, "prior");
  if (!prior.is_array()) throw SpecParseError("prior must be an array");
  for (const auto& p : prior) {
    if (p.is_string()) {
      spec.prior.push_back(parse_decimal(p.get<std::string>()));
    } else if (p.is_number()) {
      spec.prior.push_back(p.get<double>());
    } else {
      throw SpecParseError("prior entries must be decimal strings or numbers");
    }
  }
  const auto& payoffs = require(j, "payoffs");
  if (!payoffs.is_array()) throw SpecParseError("payoffs must be an array of rows");
  for (const auto& row : payoffs) {
    if (!row.is_array()) throw SpecParseError("each payoff row must be an array");
    std::vector<double> r;
    r.reserve(row.size());
    for (const auto& v : row) {
      if (!v.is_number()) throw SpecParseError("payoff entries must be numbers");
      r.push_back(v.get<double>());
    }
    spec.payoffs.push_back(std::move(r));
  }
  if (j.contains("labels")) {
    const auto& labels = j.at("labels");
    if (!labels.is_object()) throw SpecParseError("labels must be an object");
    if (labels.contains("players")) {
      spec.player_labels = labels.at("players").get<std::vector<std::string>>();
    }
    if (labels.contains("types")) {
      spec.type_labels = labels.at("types").get<std::vector<std::vector<std::string>>>();
    }
    if (labels.contains("actions")) {
      spec.action_labels = labels.at("actions").get<std::vector<std::vector<std::string>>>();
    }
  }
  return spec;
}

MbgSpec load_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpecParseError("cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw SpecParseError("invalid JSON in " + path + ": " + e.what());
  }
  return spec_from_json(j);
}

void save_spec(const MbgSpec& spec, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw SpecParseError("cannot write " + path);
  out << spec_to_json(spec).dump(2) << "\n";
}

namespace {

nlohmann::json strategy_json(const StrategyProfile& s) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& group : s) j.push_back(group);
  return j;
}

// Member actions behind a joint group action, as text.
std::string joint_action_text(const MbgSpec& spec, std::size_t group,
                              std::size_t joint_action) {
  const std::size_t ml = spec.group_sizes[group - 1];
  const std::vector<std::size_t> radix(ml, spec.num_actions);
  const auto digits = lex_decode(joint_action, radix);
  const auto offsets = spec.group_offsets();
  std::ostringstream os;
  os << "(";
  for (std::size_t j = 0; j < ml; ++j) {
    if (j) os << ", ";
    const std::size_t player = offsets[group - 1] + j;
    if (!spec.action_labels.empty() && player < spec.action_labels.size()) {
      os << spec.action_labels[player][digits[j] - 1];
    } else {
      os << "a" << digits[j];
    }
  }
  os << ")";
  return os.str();
}

}  // namespace

nlohmann::json report_to_json(const EquilibriumReport& rep, const MbgSpec& spec,
                              const ReportRenderOptions& ropts) {
  nlohmann::json j;
  j["format"] = "mbg-report/1";
  j["mode"] = rep.mode == PotentialMode::kGroup ? "group" : "strong";
  j["tolerance"] = rep.tol;
  j["tie_tolerance"] = rep.tie_tol;
  j["game"] = {{"players", spec.num_players},
               {"groups", spec.group_sizes},
               {"types", spec.num_types},
               {"actions", spec.num_actions},
               {"agents", rep.dims.agent_count()},
               {"strategy_profiles", rep.dims.htilde}};

  nlohmann::json pot;
  pot["solvable"] = rep.potential_solvable;
  pot["residual"] = rep.residual;
  pot["cg_iterations"] = rep.cg_iterations;
  pot["note"] = rep.solver_note;
  j["potential"] = std::move(pot);

  if (rep.potential_solvable) {
    nlohmann::json am;
    am["value_raw"] = rep.argmax.value;
    am["value_normalized"] = rep.argmax.value - rep.potential_at_first;
    am["alphas"] = rep.argmax.alphas;
    nlohmann::json strategies = nlohmann::json::array();
    for (const auto& s : rep.argmax_strategies) strategies.push_back(strategy_json(s));
    am["strategies"] = std::move(strategies);
    j["argmax"] = std::move(am);
    j["verification"] = {{"checked", rep.verified},
                         {"ok", rep.verify.ok},
                         {"max_violation", rep.verify.max_violation}};
    const bool include_vec =
        ropts.force_vectors || rep.potential.size() <= ropts.vector_cap;
    if (include_vec) {
      nlohmann::json row = nlohmann::json::array();
      for (double v : rep.potential) row.push_back(v);
      j["potential_row"] = std::move(row);
    }
  }

  nlohmann::json oracle;
  oracle["ran"] = rep.oracle_ran;
  if (rep.oracle_ran) {
    oracle["agent_game_equilibria"] = rep.oracle_ne;
    oracle["original_game_equilibria"] = rep.oracle_mbne;
    nlohmann::json strategies = nlohmann::json::array();
    for (const auto& s : rep.mbne_strategies) strategies.push_back(strategy_json(s));
    oracle["equilibrium_strategies"] = std::move(strategies);
    oracle["correspondence_ok"] = rep.correspondence_ok;
    oracle["equilibria_not_in_argmax"] = rep.ne_not_argmax;
    oracle["argmax_not_equilibria"] = rep.argmax_not_ne;
  }
  j["oracle"] = std::move(oracle);
  return j;
}

std::string report_to_text(const EquilibriumReport& rep, const MbgSpec& spec) {
  std::ostringstream os;
  os << "game: " << spec.num_players << " players in " << spec.group_sizes.size()
     << " group(s) [";
  for (std::size_t l = 0; l < spec.group_sizes.size(); ++l) {
    if (l) os << " ";
    os << spec.group_sizes[l];
  }
  os << "], " << spec.num_types << " types, " << spec.num_actions
     << " actions per player\n";
  os << "agent game: " << rep.dims.agent_count() << " agents, " << rep.dims.htilde
     << " strategy profiles\n";
  os << "mode: " << (rep.mode == PotentialMode::kGroup ? "group" : "strong")
     << "   tolerance: " << format_double(rep.tol) << "\n";

  if (rep.potential_solvable) {
    os << "potential: solvable (relative residual " << format_double(rep.residual)
       << ", " << rep.cg_iterations << " cg iterations)\n";
    if (rep.verified) {
      os << "identity check: " << (rep.verify.ok ? "ok" : "FAILED")
         << " (max violation " << format_double(rep.verify.max_violation) << ")\n";
    }
    os << "maximizers: " << rep.argmax.alphas.size() << " profile(s), potential value "
       << format_double(rep.argmax.value - rep.potential_at_first)
       << " above the first profile (raw " << format_double(rep.argmax.value) << ")\n";
    for (std::size_t i = 0; i < rep.argmax.alphas.size(); ++i) {
      os << "  profile " << rep.argmax.alphas[i] << ":";
      const auto& s = rep.argmax_strategies[i];
      for (std::size_t l = 0; l < s.size(); ++l) {
        for (std::size_t k = 0; k < s[l].size(); ++k) {
          os << " g" << (l + 1) << "t" << (k + 1) << "->"
             << joint_action_text(spec, l + 1, s[l][k]);
        }
      }
      os << "\n";
    }
  } else {
    os << "potential: NOT solvable (relative residual " << format_double(rep.residual)
       << " above tolerance); the game has no potential in this mode\n";
  }

  if (rep.oracle_ran) {
    os << "oracle: " << rep.oracle_mbne.size()
       << " equilibrium profile(s) by exhaustive search; agent-game and "
          "original-game sets "
       << (rep.correspondence_ok ? "coincide" : "DIFFER") << "\n";
    if (rep.potential_solvable) {
      os << "  equilibria outside argmax: " << rep.ne_not_argmax.size()
         << ", argmax outside equilibria: " << rep.argmax_not_ne.size() << "\n";
    }
    for (std::size_t i = 0; i < rep.oracle_mbne.size(); ++i) {
      os << "  equilibrium " << rep.oracle_mbne[i] << ":";
      const auto& s = rep.mbne_strategies[i];
      for (std::size_t l = 0; l < s.size(); ++l) {
        for (std::size_t k = 0; k < s[l].size(); ++k) {
          os << " g" << (l + 1) << "t" << (k + 1) << "->"
             << joint_action_text(spec, l + 1, s[l][k]);
        }
      }
      os << "\n";
    }
  } else {
    os << "oracle: skipped\n";
  }
  return os.str();
}

}  // namespace mbg
