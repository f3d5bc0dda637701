// Wall-time comparison of the serial reference sweeps against the OpenMP
// kernels, with checksum equality enforced. Exit 1 on any divergence.
#include <chrono>
#include <cstdio>

#include "CLI11.hpp"
#include "mla/sweeps.hpp"

using namespace mla;
using clock_type = std::chrono::steady_clock;

static double seconds_since(clock_type::time_point t0) {
  return std::chrono::duration<double>(clock_type::now() - t0).count();
}

int main(int argc, char** argv) {
  CLI::App app{"sweep benchmarks"};
  int count = 60;
  int window = 3;
  int jobs = 4;
  std::uint64_t seed = 20240901;
  app.add_option("--count", count, "corpus entries");
  app.add_option("--window", window, "verify window width");
  app.add_option("--jobs", jobs, "parallel worker count");
  app.add_option("--seed", seed, "corpus seed");
  CLI11_PARSE(app, argc, argv);

  bool all_equal = true;

  {
    auto entries = random_corpus(seed, count);
    auto t0 = clock_type::now();
    auto serial = corpus_sweep_serial(entries, window);
    double ts = seconds_since(t0);
    t0 = clock_type::now();
    auto par = corpus_sweep(entries, window, jobs);
    double tp = seconds_since(t0);

    bool equal = corpus_checksum(serial) == corpus_checksum(par);
    all_equal = all_equal && equal;
    int passed = 0;
    for (const auto& r : serial) passed += r.ok;
    std::printf("corpus  entries=%d window=%d  serial %.3fs  jobs=%d %.3fs  speedup %.2fx  passed %d/%d  checksums %s\n",
                count, window, ts, jobs, tp, tp > 0 ? ts / tp : 0.0, passed, count,
                equal ? "equal" : "DIFFER");
  }

  {
    auto R = RootSystemData::build('A', 1);
    AlgebraConfig cfg{R, 2, 2};
    auto base = std::make_shared<WeylModule>(R, Weight{{0}});
    auto L1 = TowerModule::induce(cfg, base, TruncationBox{2, 0});
    auto M = TowerModule::induce(cfg, L1, TruncationBox{2, 1});

    auto grid = energy_grid(*M, 1, 2);
    auto t0 = clock_type::now();
    auto serial = energy_sweep_serial(*M, grid);
    double ts = seconds_since(t0);
    t0 = clock_type::now();
    auto par = energy_sweep(*M, grid, jobs);
    double tp = seconds_since(t0);

    bool equal = energy_checksum(serial) == energy_checksum(par);
    all_equal = all_equal && equal;
    int checked = 0, passed = 0;
    for (const auto& r : serial)
      if (!r.overflow) {
        ++checked;
        passed += r.ok;
      }
    std::printf("energy  cases=%zu  serial %.3fs  jobs=%d %.3fs  speedup %.2fx  passed %d/%d checked  checksums %s\n",
                grid.size(), ts, jobs, tp, tp > 0 ? ts / tp : 0.0, passed, checked,
                equal ? "equal" : "DIFFER");
  }

  return all_equal ? 0 : 1;
}
