// Kernel timings: serial reference sweeps vs the OpenMP variants, plus the
// structure-matrix build and the potential solve. Medians over --reps runs.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mbg/equilibrium.hpp"
#include "mbg/generator.hpp"

using namespace mbg;

namespace {

double median_ms(std::size_t reps, const std::function<void()>& fn) {
  std::vector<double> samples;
  samples.reserve(reps);
  for (std::size_t i = 0; i < reps; ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    samples.push_back(
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
            .count());
  }
  std::sort(samples.begin(), samples.end());
  return samples[samples.size() / 2];
}

void pair_row(const char* spec, const char* kernel, double serial, double parallel) {
  std::printf("%-14s %-18s %10.3f %10.3f %8.2fx\n", spec, kernel, serial, parallel,
              parallel > 0 ? serial / parallel : 0.0);
}

void single_row(const char* spec, const char* kernel, double ms) {
  std::printf("%-14s %-18s %10.3f %10s %9s\n", spec, kernel, ms, "-", "-");
}

void bench_spec(const char* name, const MbgSpec& spec, std::size_t reps) {
  const Meag meag = build_meag(spec);
  volatile double sink = 0.0;

  pair_row(name, "build_meag",
           median_ms(reps, [&] { sink += build_meag(spec, BuildPath::kDirectSerial)
                                             .agent_rows[0][0]; }),
           median_ms(reps, [&] { sink += build_meag(spec, BuildPath::kDirectParallel)
                                             .agent_rows[0][0]; }));
  if (meag.dims.htilde <= (std::size_t{1} << 12)) {
    single_row(name, "build (structure)",
               median_ms(reps, [&] { sink += build_meag(spec, BuildPath::kStructure)
                                                 .agent_rows[0][0]; }));
  }

  pair_row(name, "ne_oracle",
           median_ms(reps, [&] { sink += ne_oracle(meag, PotentialMode::kGroup,
                                                   /*parallel=*/false).size(); }),
           median_ms(reps, [&] { sink += ne_oracle(meag, PotentialMode::kGroup,
                                                   /*parallel=*/true).size(); }));
  pair_row(name, "mbne_oracle",
           median_ms(reps, [&] { sink += mbne_oracle(spec, PotentialMode::kGroup,
                                                     /*parallel=*/false).size(); }),
           median_ms(reps, [&] { sink += mbne_oracle(spec, PotentialMode::kGroup,
                                                     /*parallel=*/true).size(); }));

  const PotentialSystem sys = build_system(meag, PotentialMode::kGroup);
  const PotentialSolution sol = solve(sys);
  const std::vector<double> row =
      sol.solvable ? sol.potential : std::vector<double>(meag.dims.htilde, 0.0);
  pair_row(name, "verify_potential",
           median_ms(reps, [&] { sink += verify_potential(meag, PotentialMode::kGroup,
                                                          row, 1e-8,
                                                          /*parallel=*/false)
                                             .max_violation; }),
           median_ms(reps, [&] { sink += verify_potential(meag, PotentialMode::kGroup,
                                                          row, 1e-8,
                                                          /*parallel=*/true)
                                             .max_violation; }));
  single_row(name, "solve",
             median_ms(reps, [&] {
               sink += solve(build_system(meag, PotentialMode::kGroup)).residual;
             }));
  (void)sink;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"kernel benchmarks"};
  std::size_t reps = 5;
  app.add_option("--reps", reps, "runs per kernel; the median is reported");
  CLI11_PARSE(app, argc, argv);

  std::printf("%-14s %-18s %10s %10s %9s\n", "spec", "kernel", "serial ms",
              "parallel", "speedup");

  // bundled demo: 6 agents, 1024 strategy profiles
  bench_spec("auction", example_auction(), reps);

  // three singleton groups, 4 actions: 6 agents of dimension 4, 4096 profiles
  RandomSpecOptions big;
  big.min_players = 3;
  big.max_players = 3;
  big.num_actions = 4;
  bench_spec("potential3x4", random_potential_spec(17, PotentialMode::kGroup, big),
             reps);
  return 0;
}
