#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "mbg/equilibrium.hpp"
#include "mbg/game.hpp"

namespace mbg {

// Raised for malformed files (missing fields, wrong types, unparseable
// numbers); distinct from validation issues, which concern a well-formed
// spec's content.
struct SpecParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Game file layout (format "mbg-spec/1"): players, groups, types, actions,
// prior (decimal strings, so files round-trip exactly), payoffs (number
// rows), optional labels.
nlohmann::json spec_to_json(const MbgSpec& spec);
MbgSpec spec_from_json(const nlohmann::json& j);
MbgSpec load_spec(const std::string& path);
void save_spec(const MbgSpec& spec, const std::string& path);

// Shortest round-trip decimal for a double; stable across runs.
std::string format_double(double v);

struct ReportRenderOptions {
  // Full per-profile vectors are included in JSON only below this size
  // unless forced.
  std::size_t vector_cap = std::size_t{1} << 12;
  bool force_vectors = false;
};

// Machine report (format "mbg-report/1"). Deterministic for identical inputs
// and options: keys are sorted, floats shortest round-trip, sets ascending;
// no timings or environment data inside.
nlohmann::json report_to_json(const EquilibriumReport& rep, const MbgSpec& spec,
                              const ReportRenderOptions& ropts = {});

// Human-readable rendering of the same content.
std::string report_to_text(const EquilibriumReport& rep, const MbgSpec& spec);

}  // namespace mbg
