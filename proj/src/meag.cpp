#include "mbg/meag.hpp"

#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace mbg {

MeagDims MeagDims::from_spec(const MbgSpec& spec) {
  MeagDims d;
  const std::size_t r = spec.num_groups();
  d.group_type_counts.resize(r);
  d.group_action_counts.resize(r);
  d.group_first_agent.resize(r);
  for (std::size_t l = 1; l <= r; ++l) {
    d.group_type_counts[l - 1] = spec.group_type_count(l);
    d.group_action_counts[l - 1] = spec.group_action_count(l);
  }
  for (std::size_t l = 0; l < r; ++l) {
    d.group_first_agent[l] = d.agent_dims.size();
    for (std::size_t k = 1; k <= d.group_type_counts[l]; ++k) {
      d.agent_dims.push_back(d.group_action_counts[l]);
      d.agent_group.push_back(l + 1);
      d.agent_type.push_back(k);
    }
  }
  d.htilde = 1;
  for (std::size_t g : d.agent_dims) d.htilde = checked_mul(d.htilde, g);
  d.agent_place.assign(d.agent_dims.size(), 1);
  for (std::size_t b = d.agent_dims.size(); b-- > 1;) {
    d.agent_place[b - 1] = checked_mul(d.agent_place[b], d.agent_dims[b]);
  }
  return d;
}

std::size_t MeagDims::agent_pos(std::size_t group, std::size_t k) const {
  if (group < 1 || group > group_first_agent.size()) throw std::out_of_range("group");
  if (k < 1 || k > group_type_counts[group - 1]) throw std::out_of_range("group type");
  return group_first_agent[group - 1] + (k - 1);
}

std::size_t MeagDims::digit(std::size_t alpha, std::size_t b) const {
  return (alpha - 1) / agent_place[b] % agent_dims[b] + 1;
}

std::size_t MeagDims::with_digit(std::size_t alpha, std::size_t b, std::size_t d) const {
  const std::size_t cur = digit(alpha, b);
  return alpha + (d - cur) * agent_place[b];
}

std::size_t gamma(const MeagDims& dims, const StrategyProfile& s) {
  if (s.size() != dims.group_type_counts.size()) {
    throw std::invalid_argument("gamma: group count mismatch");
  }
  std::vector<std::size_t> digits;
  digits.reserve(dims.agent_count());
  for (std::size_t l = 0; l < s.size(); ++l) {
    if (s[l].size() != dims.group_type_counts[l]) {
      throw std::invalid_argument("gamma: type count mismatch");
    }
    digits.insert(digits.end(), s[l].begin(), s[l].end());
  }
  return lex_encode(dims.agent_dims, digits);
}

StrategyProfile gamma_inverse(const MeagDims& dims, std::size_t alpha) {
  const auto digits = lex_decode(alpha, dims.agent_dims);
  StrategyProfile s(dims.group_type_counts.size());
  std::size_t pos = 0;
  for (std::size_t l = 0; l < s.size(); ++l) {
    s[l].assign(digits.begin() + pos, digits.begin() + pos + dims.group_type_counts[l]);
    pos += dims.group_type_counts[l];
  }
  return s;
}

namespace {

// Per-group digit tables for the e^m type profiles and the g^m action
// profiles, plus place values to re-encode group actions.
struct ProfileTables {
  std::vector<std::size_t> type_digits;    // [tau-1][l], flattened
  std::vector<std::size_t> action_place;   // suffix products of g_l
  std::size_t num_groups = 0;
  std::size_t type_count = 0;
  std::size_t action_count = 0;

  static ProfileTables make(const MeagDims& dims) {
    ProfileTables t;
    t.num_groups = dims.group_type_counts.size();
    t.type_count = radix_product(dims.group_type_counts);
    t.action_count = radix_product(dims.group_action_counts);
    t.type_digits.resize(checked_mul(t.type_count, t.num_groups));
    std::vector<std::size_t> dig(t.num_groups, 1);
    for (std::size_t tau = 0; tau < t.type_count; ++tau) {
      for (std::size_t l = 0; l < t.num_groups; ++l) {
        t.type_digits[tau * t.num_groups + l] = dig[l];
      }
      next_digits(dims.group_type_counts, dig);
    }
    t.action_place.assign(t.num_groups, 1);
    for (std::size_t l = t.num_groups; l-- > 1;) {
      t.action_place[l - 1] = t.action_place[l] * dims.group_action_counts[l];
    }
    return t;
  }
};

}  // namespace

double agent_payoff_direct(const MbgSpec& spec, const MeagDims& dims,
                           const GroupType& gt, std::size_t player,
                           std::size_t alpha) {
  const std::size_t r = dims.group_type_counts.size();
  const std::size_t l0 = gt.group - 1;
  std::vector<std::size_t> strat(dims.agent_count());
  lex_decode_into(alpha, dims.agent_dims, strat);

  std::vector<std::size_t> tdig(r, 1);
  tdig[l0] = gt.k;
  std::vector<std::size_t> adig(r);
  const std::size_t gm = spec.action_profiles();
  double sum = 0.0;
  while (true) {
    const std::size_t tau = lex_encode(dims.group_type_counts, tdig);
    const double p = spec.prior[tau - 1];
    if (p != 0.0) {
      for (std::size_t l = 0; l < r; ++l) {
        adig[l] = strat[dims.group_first_agent[l] + tdig[l] - 1];
      }
      const std::size_t a = lex_encode(dims.group_action_counts, adig);
      sum += p * spec.payoffs[player - 1][(tau - 1) * gm + (a - 1)];
    }
    // advance the other groups' digits, keeping gt.group pinned
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
  return sum;
}

Matrix e_matrix(const MeagDims& dims, std::size_t alpha, std::size_t group) {
  const std::size_t r = dims.group_type_counts.size();
  if (group < 1 || group > r) throw std::out_of_range("group");
  const std::size_t l0 = group - 1;
  const std::size_t gl = dims.group_action_counts[l0];
  const std::size_t el = dims.group_type_counts[l0];
  const std::size_t hl = checked_pow(gl, el);
  std::size_t pre = 1, post = 1;
  for (std::size_t l = 0; l < l0; ++l) {
    pre = checked_mul(pre, checked_pow(dims.group_action_counts[l], dims.group_type_counts[l]));
  }
  for (std::size_t l = l0 + 1; l < r; ++l) {
    post = checked_mul(post, checked_pow(dims.group_action_counts[l], dims.group_type_counts[l]));
  }
  const Matrix block = stp(selector_matrix(pre, hl, post),
                           LogicalVector{dims.htilde, alpha}.dense());
  Matrix e(gl, el);
  for (std::size_t k = 1; k <= el; ++k) {
    const Matrix col = stp(
        selector_matrix(checked_pow(gl, k - 1), gl, checked_pow(gl, el - k)), block);
    for (std::size_t rrow = 0; rrow < gl; ++rrow) e(rrow, k - 1) = col(rrow, 0);
  }
  return e;
}

Matrix phi(const MeagDims& dims, std::size_t alpha) {
  Matrix ek = e_matrix(dims, alpha, 1);
  for (std::size_t l = 2; l <= dims.group_type_counts.size(); ++l) {
    ek = kron(ek, e_matrix(dims, alpha, l));
  }
  const std::size_t etil = radix_product(dims.group_type_counts);
  return stp(kron(Matrix::identity(etil), ek), order_reduce_matrix(etil));
}

Matrix xi_projection(const MeagDims& dims, const GroupType& gt) {
  const std::size_t el = dims.group_type_counts.at(gt.group - 1);
  std::size_t pre = 1;
  for (std::size_t l = 0; l + 1 < gt.group; ++l) pre = checked_mul(pre, dims.group_type_counts[l]);
  const Matrix d = LogicalVector{el, gt.k}.dense();
  return kron(Matrix::identity(pre), d * d.transpose());
}

Matrix theta(const MbgSpec& spec, const MeagDims& dims, const GroupType& gt,
             std::size_t player, std::size_t alpha) {
  const std::size_t m = spec.num_players;
  const std::size_t width = spec.type_action_profiles();
  Matrix stacked(checked_mul(m, width), 1);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < width; ++j) stacked(i * width + j, 0) = spec.payoffs[i][j];
  }
  Matrix pick(1, m);
  pick(0, player - 1) = 1.0;
  Matrix v = stp(pick, stacked);                    // this player's payoff column
  v = stp(phi(dims, alpha).transpose(), v);         // c_i(T, A(T)) per type profile
  return stp(xi_projection(dims, gt), v);           // zero out T with digit != k
}

Matrix psi(const MbgSpec& spec, const MeagDims& dims, const GroupType& gt,
           std::size_t alpha) {
  const auto offsets = spec.group_offsets();
  Matrix acc(spec.type_profiles(), 1);
  for (std::size_t p = offsets[gt.group - 1]; p < offsets[gt.group]; ++p) {
    acc = acc + theta(spec, dims, gt, p + 1, alpha);
  }
  acc *= 1.0 / static_cast<double>(spec.group_sizes[gt.group - 1]);
  return acc;
}

namespace {

void build_direct(const MbgSpec& spec, const MeagDims& dims, Meag& out, bool parallel) {
  const ProfileTables tab = ProfileTables::make(dims);
  const std::size_t h = dims.htilde;
  const std::size_t r = tab.num_groups;
  const std::size_t gm = tab.action_count;
  const auto offsets = spec.group_offsets();
  const std::ptrdiff_t hs = static_cast<std::ptrdiff_t>(h);

#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (parallel)
#endif
  for (std::ptrdiff_t as = 1; as <= hs; ++as) {
    const std::size_t alpha = static_cast<std::size_t>(as);
    std::vector<std::size_t> strat(dims.agent_count());
    lex_decode_into(alpha, dims.agent_dims, strat);
    for (std::size_t tau = 1; tau <= tab.type_count; ++tau) {
      const double p = spec.prior[tau - 1];
      if (p == 0.0) continue;
      const std::size_t* tdig = &tab.type_digits[(tau - 1) * r];
      std::size_t a = 1;
      for (std::size_t l = 0; l < r; ++l) {
        const std::size_t act = strat[dims.group_first_agent[l] + tdig[l] - 1];
        a += (act - 1) * tab.action_place[l];
      }
      const std::size_t col = (tau - 1) * gm + (a - 1);
      for (std::size_t l = 0; l < r; ++l) {
        const std::size_t b = dims.group_first_agent[l] + tdig[l] - 1;
        auto& rows = out.player_rows[b];
        for (std::size_t j = 0; j < rows.size(); ++j) {
          rows[j][alpha - 1] += p * spec.payoffs[offsets[l] + j][col];
        }
      }
    }
  }
  (void)parallel;
}

// Column map of a logical matrix: the 1-based row holding the single 1 of
// each column. Rejects anything that is not a {0,1} column-selection.
std::vector<std::size_t> logical_column_map(const Matrix& m) {
  std::vector<std::size_t> map(m.cols(), 0);
  for (std::size_t c = 0; c < m.cols(); ++c) {
    for (std::size_t r = 0; r < m.rows(); ++r) {
      const double v = m(r, c);
      if (v == 0.0) continue;
      if (v != 1.0 || map[c] != 0) throw std::logic_error("matrix is not logical");
      map[c] = r + 1;
    }
    if (map[c] == 0) throw std::logic_error("logical matrix has an empty column");
  }
  return map;
}

// Same composition as e_matrix/phi/theta, with the loop-invariant selector
// and payoff factors hoisted out of the alpha sweep. Every matrix involved is
// logical, so the per-alpha work reduces to exact column lookups.
void build_structure(const MbgSpec& spec, const MeagDims& dims, Meag& out) {
  const ProfileTables tab = ProfileTables::make(dims);
  const std::size_t h = dims.htilde;
  const std::size_t r = tab.num_groups;
  const std::size_t gm = tab.action_count;
  const std::size_t m = spec.num_players;
  const auto offsets = spec.group_offsets();

  // Hoisted ingredients of theta: the stacked payoff column and each player's
  // slice of it, extracted with the index-1 swap selector.
  const std::size_t width = spec.type_action_profiles();
  Matrix stacked(checked_mul(m, width), 1);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < width; ++j) stacked(i * width + j, 0) = spec.payoffs[i][j];
  }
  std::vector<Matrix> payoff_cols(m);
  for (std::size_t i = 0; i < m; ++i) {
    Matrix pick(1, m);
    pick(0, i) = 1.0;
    payoff_cols[i] = stp(pick, stacked);
  }

  // Hoisted selector compositions: group block extraction then per-type
  // extraction, kept as column maps of the (logical) products.
  std::vector<std::vector<std::size_t>> outer_map(r);
  std::vector<std::vector<std::vector<std::size_t>>> inner_map(r);
  {
    std::size_t pre = 1;
    std::vector<std::size_t> hblocks(r);
    for (std::size_t l = 0; l < r; ++l) {
      hblocks[l] = checked_pow(dims.group_action_counts[l], dims.group_type_counts[l]);
    }
    for (std::size_t l = 0; l < r; ++l) {
      std::size_t post = 1;
      for (std::size_t j = l + 1; j < r; ++j) post = checked_mul(post, hblocks[j]);
      outer_map[l] = logical_column_map(selector_matrix(pre, hblocks[l], post));
      const std::size_t gl = dims.group_action_counts[l];
      const std::size_t el = dims.group_type_counts[l];
      inner_map[l].resize(el);
      for (std::size_t k = 1; k <= el; ++k) {
        inner_map[l][k - 1] = logical_column_map(
            selector_matrix(checked_pow(gl, k - 1), gl, checked_pow(gl, el - k)));
      }
      pre = checked_mul(pre, hblocks[l]);
    }
  }

  std::vector<std::size_t> ecol(dims.agent_count());
  for (std::size_t alpha = 1; alpha <= h; ++alpha) {
    // E(alpha, l) columns for all groups, via the hoisted maps.
    for (std::size_t l = 0; l < r; ++l) {
      const std::size_t x = outer_map[l][alpha - 1];
      for (std::size_t k = 1; k <= dims.group_type_counts[l]; ++k) {
        ecol[dims.group_first_agent[l] + k - 1] = inner_map[l][k - 1][x - 1];
      }
    }
    // Phi's column at type profile tau is delta_tau (x) delta_{A(tau)}; theta
    // keeps the tau slice with the agent's own digit, and the prior row
    // contracts it. Accumulate that contraction per (agent, member).
    for (std::size_t tau = 1; tau <= tab.type_count; ++tau) {
      const double p = spec.prior[tau - 1];
      if (p == 0.0) continue;
      const std::size_t* tdig = &tab.type_digits[(tau - 1) * r];
      std::size_t a = 1;
      for (std::size_t l = 0; l < r; ++l) {
        a += (ecol[dims.group_first_agent[l] + tdig[l] - 1] - 1) * tab.action_place[l];
      }
      const std::size_t col = (tau - 1) * gm + (a - 1);
      for (std::size_t l = 0; l < r; ++l) {
        const std::size_t b = dims.group_first_agent[l] + tdig[l] - 1;
        auto& rows = out.player_rows[b];
        for (std::size_t j = 0; j < rows.size(); ++j) {
          rows[j][alpha - 1] += p * payoff_cols[offsets[l] + j](col, 0);
        }
      }
    }
  }
}

}  // namespace

Meag build_meag(const MbgSpec& spec, BuildPath path, const SizeCaps& caps) {
  Meag out;
  out.dims = MeagDims::from_spec(spec);
  out.group_offsets = spec.group_offsets();
  const std::size_t h = out.dims.htilde;
  if (h > caps.max_agent_profiles) {
    throw std::length_error("agent strategy space exceeds the configured cap");
  }
  if (path == BuildPath::kStructure && h > (std::size_t{1} << 12)) {
    throw std::length_error("structure-matrix path is for verification scale");
  }

  out.player_rows.resize(out.dims.agent_count());
  out.agent_rows.resize(out.dims.agent_count());
  for (std::size_t b = 0; b < out.dims.agent_count(); ++b) {
    const std::size_t l = out.dims.agent_group[b];
    out.player_rows[b].assign(spec.group_sizes[l - 1], std::vector<double>(h, 0.0));
  }

  switch (path) {
    case BuildPath::kDirectSerial:
      build_direct(spec, out.dims, out, false);
      break;
    case BuildPath::kDirectParallel:
      build_direct(spec, out.dims, out, true);
      break;
    case BuildPath::kStructure:
      build_structure(spec, out.dims, out);
      break;
  }

  for (std::size_t b = 0; b < out.dims.agent_count(); ++b) {
    const std::size_t ml = out.player_rows[b].size();
    auto& avg = out.agent_rows[b];
    avg.assign(h, 0.0);
    for (std::size_t j = 0; j < ml; ++j) {
      const auto& row = out.player_rows[b][j];
      for (std::size_t c = 0; c < h; ++c) avg[c] += row[c];
    }
    const double inv = 1.0 / static_cast<double>(ml);
    for (double& v : avg) v *= inv;
  }
  return out;
}

}  // namespace mbg
