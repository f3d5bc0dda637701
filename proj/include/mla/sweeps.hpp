#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mla/commutator.hpp"
#include "mla/json_io.hpp"
#include "mla/sugawara.hpp"

namespace mla {

// One committed corpus element. The element carries its own algebra and
// loop rank.
struct CorpusEntry {
  std::string id;
  PbwElement z;
};

// Seeded random corpus: non-constant elements over A1/A2 with loop rank
// 2 or 3, filtration degree at most 3, at most 4 monomials, exponents in
// the box |n_i| <= 3 (last exponent negative). Every third entry is
// built from Cartan loop generators only so both certificate cases stay
// represented.
std::vector<CorpusEntry> random_corpus(std::uint64_t seed, int count);

Json corpus_json(std::uint64_t seed, const std::vector<CorpusEntry>& entries);
std::vector<CorpusEntry> corpus_parse(const Json& j);

struct CorpusResult {
  std::string id;
  bool ok = false;
  int case_id = 0;
  int degree = 0;
  long p0 = 0;
  Rat predicted;
  int r_lo = 0, r_hi = 0;
  std::string error;  // nonempty when analyze or verify threw
};

// analyze + verify on the window [p0, p0 + window] for each entry.
// corpus_sweep runs the OpenMP kernel (results land in indexed slots, so
// output order never depends on scheduling); corpus_sweep_serial is the
// reference loop the tests compare against.
std::vector<CorpusResult> corpus_sweep(const std::vector<CorpusEntry>& entries,
                                       int window, int jobs);
std::vector<CorpusResult> corpus_sweep_serial(const std::vector<CorpusEntry>& entries,
                                              int window);

// sequential FNV-1a fold over the canonical result strings
std::uint64_t corpus_checksum(const std::vector<CorpusResult>& results);

Json corpus_report_json(const std::vector<CorpusResult>& results);

// One energy-commutator grid case: generator x (X) t^n applied to basis
// vector vec of the module under test.
struct EnergyCase {
  Chev x;
  MultiIndex n;
  int vec = 0;
};

struct EnergyResult {
  bool overflow = false;
  bool classical = false;
  bool ok = false;
  std::string lhs_hash, rhs_hash;
  std::string error;  // nonempty when the case threw something unexpected
};

// deterministic grid: every Chevalley generator, every exponent tuple
// supported on the top axis plus at most one lateral axis with entries
// in [-span, span], every basis vector within max_vec_depth of its
// block's top along the last axis
std::vector<EnergyCase> energy_grid(const TowerModule& m, int span, int max_vec_depth);

std::vector<EnergyResult> energy_sweep(const TowerModule& m,
                                       const std::vector<EnergyCase>& cases, int jobs);
std::vector<EnergyResult> energy_sweep_serial(const TowerModule& m,
                                              const std::vector<EnergyCase>& cases);

std::uint64_t energy_checksum(const std::vector<EnergyResult>& results);

Json energy_report_json(const TowerModule& m, const std::vector<EnergyCase>& cases,
                        const std::vector<EnergyResult>& results);

}  // namespace mla
