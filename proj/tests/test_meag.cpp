#include <doctest.h>

#include <stdexcept>

#include "mbg/generator.hpp"
#include "mbg/meag.hpp"

using namespace mbg;

namespace {

Matrix prior_row(const MbgSpec& spec) {
  return Matrix::row_vector(spec.prior);
}

}  // namespace

TEST_CASE("agent layout of the bundled auction") {
  const MbgSpec spec = example_auction();
  const MeagDims dims = MeagDims::from_spec(spec);
  CHECK(dims.agent_count() == 6);
  CHECK(dims.agent_dims == std::vector<std::size_t>{2, 2, 4, 4, 4, 4});
  CHECK(dims.htilde == 1024);
  CHECK(dims.group_type_counts == std::vector<std::size_t>{2, 4});
  CHECK(dims.group_action_counts == std::vector<std::size_t>{2, 4});
  CHECK(dims.agent_pos(1, 2) == 1);
  CHECK(dims.agent_pos(2, 1) == 2);
  CHECK(dims.agent_group[5] == 2);
  CHECK(dims.agent_type[5] == 4);

  CHECK(dims.digit(257, 0) == 1);
  CHECK(dims.digit(257, 1) == 2);
  CHECK(dims.digit(257, 2) == 1);
  CHECK(dims.with_digit(1, 1, 2) == 257);
  CHECK(dims.with_digit(257, 1, 1) == 1);
}

TEST_CASE("gamma is the inverse of gamma_inverse") {
  const MbgSpec spec = example_auction();
  const MeagDims dims = MeagDims::from_spec(spec);

  const StrategyProfile s257{{1, 2}, {1, 1, 1, 1}};
  CHECK(gamma(dims, s257) == 257);
  CHECK(gamma_inverse(dims, 257) == s257);
  CHECK(gamma(dims, StrategyProfile{{2, 1}, {1, 1, 1, 1}}) == 513);
  CHECK(gamma(dims, StrategyProfile{{2, 2}, {1, 1, 1, 1}}) == 769);

  Rng rng(31);
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t alpha = 1 + rng.below(dims.htilde);
    CHECK(gamma(dims, gamma_inverse(dims, alpha)) == alpha);
  }
  CHECK_THROWS_AS(gamma(dims, StrategyProfile{{1, 1}}), std::invalid_argument);
}

TEST_CASE("pinned ex-ante payoffs") {
  const MbgSpec spec = example_auction();
  const MeagDims dims = MeagDims::from_spec(spec);
  // agent (2, first joint type), player 2's weighted payoff at the all-ones
  // profile: both type profiles with (t2,t3) = (1,1) give payoff 38
  CHECK(agent_payoff_direct(spec, dims, {2, 1}, 2, 1) ==
        doctest::Approx(0.325 * 38).epsilon(1e-14));
  CHECK(agent_payoff_direct(spec, dims, {2, 1}, 3, 1) == 0.0);
  CHECK(agent_payoff_direct(spec, dims, {2, 1}, 1, 1) == 0.0);

  const Meag meag = build_meag(spec);
  CHECK(meag.player_rows[2][0][0] == doctest::Approx(12.35).epsilon(1e-14));
  CHECK(meag.agent_rows[2][0] == doctest::Approx(6.175).epsilon(1e-14));
}

TEST_CASE("action extraction matrices read off the strategy digits") {
  for (std::uint64_t seed : {101u, 102u, 103u}) {
    const MbgSpec spec = random_spec(seed);
    const MeagDims dims = MeagDims::from_spec(spec);
    Rng rng(seed * 7 + 1);
    for (int rep = 0; rep < 10; ++rep) {
      const std::size_t alpha = 1 + rng.below(dims.htilde);
      for (std::size_t l = 1; l <= dims.group_type_counts.size(); ++l) {
        const Matrix e = e_matrix(dims, alpha, l);
        REQUIRE(e.rows() == dims.group_action_counts[l - 1]);
        REQUIRE(e.cols() == dims.group_type_counts[l - 1]);
        for (std::size_t k = 1; k <= e.cols(); ++k) {
          const std::size_t expect = dims.digit(alpha, dims.agent_pos(l, k));
          for (std::size_t row = 1; row <= e.rows(); ++row) {
            CHECK(e(row - 1, k - 1) == (row == expect ? 1.0 : 0.0));
          }
        }
      }
    }
  }
}

TEST_CASE("phi stacks type indicators over chosen actions") {
  const MbgSpec spec = random_spec(104);
  const MeagDims dims = MeagDims::from_spec(spec);
  const std::size_t etil = spec.type_profiles();
  const std::size_t gtil = spec.action_profiles();
  Rng rng(41);
  for (int rep = 0; rep < 5; ++rep) {
    const std::size_t alpha = 1 + rng.below(dims.htilde);
    const Matrix f = phi(dims, alpha);
    REQUIRE(f.rows() == etil * gtil);
    REQUIRE(f.cols() == etil);
    const StrategyProfile s = gamma_inverse(dims, alpha);
    std::vector<std::size_t> tdig(dims.group_type_counts.size(), 1);
    for (std::size_t tau = 1; tau <= etil; ++tau) {
      std::vector<std::size_t> adig(tdig.size());
      for (std::size_t l = 0; l < tdig.size(); ++l) adig[l] = s[l][tdig[l] - 1];
      const std::size_t a = lex_encode(dims.group_action_counts, adig);
      for (std::size_t row = 1; row <= f.rows(); ++row) {
        const double expect = (row == (tau - 1) * gtil + a) ? 1.0 : 0.0;
        CHECK(f(row - 1, tau - 1) == expect);
      }
      next_digits(dims.group_type_counts, tdig);
    }
  }
}

TEST_CASE("xi projection is idempotent and keeps one type digit") {
  const MbgSpec spec = example_auction();
  const MeagDims dims = MeagDims::from_spec(spec);
  for (std::size_t l = 1; l <= 2; ++l) {
    for (std::size_t k = 1; k <= dims.group_type_counts[l - 1]; ++k) {
      const Matrix xi = xi_projection(dims, {l, k});
      CHECK((xi * xi).approx_equal(xi, 0.0));
    }
  }
}

TEST_CASE("prior-contracted theta equals the direct sum") {
  for (std::uint64_t seed : {105u, 106u}) {
    const MbgSpec spec = random_spec(seed);
    const MeagDims dims = MeagDims::from_spec(spec);
    const Matrix p = prior_row(spec);
    Rng rng(seed + 5);
    const auto offsets = spec.group_offsets();
    for (int rep = 0; rep < 6; ++rep) {
      const std::size_t alpha = 1 + rng.below(dims.htilde);
      for (std::size_t l = 1; l <= spec.num_groups(); ++l) {
        for (std::size_t k = 1; k <= dims.group_type_counts[l - 1]; ++k) {
          double avg = 0.0;
          for (std::size_t pl = offsets[l - 1] + 1; pl <= offsets[l]; ++pl) {
            const Matrix th = theta(spec, dims, {l, k}, pl, alpha);
            const Matrix val = stp(p, th);
            const double direct = agent_payoff_direct(spec, dims, {l, k}, pl, alpha);
            CHECK(val(0, 0) == doctest::Approx(direct).epsilon(1e-12));
            avg += direct;
          }
          const Matrix ps = psi(spec, dims, {l, k}, alpha);
          const Matrix pv = stp(p, ps);
          CHECK(pv(0, 0) ==
                doctest::Approx(avg / spec.group_sizes[l - 1]).epsilon(1e-12));
        }
      }
    }
  }
}

TEST_CASE("the three build paths agree") {
  for (std::uint64_t seed : {201u, 202u, 203u, 204u}) {
    const MbgSpec spec = random_spec(seed);
    const Meag serial = build_meag(spec, BuildPath::kDirectSerial);
    const Meag parallel = build_meag(spec, BuildPath::kDirectParallel);
    const Meag structure = build_meag(spec, BuildPath::kStructure);
    REQUIRE(serial.dims.htilde == parallel.dims.htilde);
    for (std::size_t b = 0; b < serial.dims.agent_count(); ++b) {
      REQUIRE(serial.player_rows[b].size() == structure.player_rows[b].size());
      for (std::size_t j = 0; j < serial.player_rows[b].size(); ++j) {
        for (std::size_t c = 0; c < serial.dims.htilde; ++c) {
          CHECK(serial.player_rows[b][j][c] == parallel.player_rows[b][j][c]);
          CHECK(serial.player_rows[b][j][c] ==
                doctest::Approx(structure.player_rows[b][j][c]).epsilon(1e-13));
        }
      }
    }
  }
}

TEST_CASE("rows match the per-entry sum on sampled entries") {
  const MbgSpec spec = example_auction();
  const Meag meag = build_meag(spec);
  const MeagDims& dims = meag.dims;
  Rng rng(51);
  for (int rep = 0; rep < 60; ++rep) {
    const std::size_t alpha = 1 + rng.below(dims.htilde);
    const std::size_t b = rng.below(dims.agent_count());
    const GroupType gt{dims.agent_group[b], dims.agent_type[b]};
    double avg = 0.0;
    for (std::size_t j = 0; j < meag.player_rows[b].size(); ++j) {
      const std::size_t player = meag.group_offsets[gt.group - 1] + j + 1;
      const double direct = agent_payoff_direct(spec, dims, gt, player, alpha);
      CHECK(meag.player_rows[b][j][alpha - 1] ==
            doctest::Approx(direct).epsilon(1e-12));
      avg += direct;
    }
    CHECK(meag.agent_rows[b][alpha - 1] ==
          doctest::Approx(avg / meag.player_rows[b].size()).epsilon(1e-12));
  }
}

TEST_CASE("structure route matches theta at full scale") {
  const MbgSpec spec = example_auction();
  const Meag meag = build_meag(spec, BuildPath::kStructure);
  const MeagDims& dims = meag.dims;
  const Matrix p = prior_row(spec);
  Rng rng(61);
  for (int rep = 0; rep < 8; ++rep) {
    const std::size_t alpha = 1 + rng.below(dims.htilde);
    const std::size_t b = rng.below(dims.agent_count());
    const GroupType gt{dims.agent_group[b], dims.agent_type[b]};
    const std::size_t player = meag.group_offsets[gt.group - 1] + 1 + rng.below(meag.player_rows[b].size());
    const Matrix th = theta(spec, dims, gt, player, alpha);
    const Matrix val = stp(p, th);
    const std::size_t j = player - meag.group_offsets[gt.group - 1] - 1;
    CHECK(val(0, 0) ==
          doctest::Approx(meag.player_rows[b][j][alpha - 1]).epsilon(1e-12));
  }
}

TEST_CASE("zero-mass types produce identically zero rows") {
  MbgSpec spec = example_auction();
  // give group 1's second type all the mass it had, drop type 1 entirely
  spec.prior = {0.0, 0.0, 0.0, 0.0, 0.325, 0.07, 0.405, 0.2};
  REQUIRE(validate(spec).ok());
  const Meag meag = build_meag(spec);
  const std::size_t dead = meag.dims.agent_pos(1, 1);
  for (const auto& row : meag.player_rows[dead]) {
    for (double v : row) CHECK(v == 0.0);
  }
  for (double v : meag.agent_rows[dead]) CHECK(v == 0.0);
}
