#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "mla/sweeps.hpp"

using namespace mla;

TEST_CASE("random corpus is reproducible and seed-sensitive") {
  auto a = random_corpus(20240901, 12);
  auto b = random_corpus(20240901, 12);
  REQUIRE(a.size() == 12);
  CHECK(dump_json(corpus_json(20240901, a)) == dump_json(corpus_json(20240901, b)));

  auto c = random_corpus(7, 12);
  CHECK(dump_json(corpus_json(7, c)) != dump_json(corpus_json(20240901, a)));
}

TEST_CASE("random corpus entries respect the advertised shape") {
  auto entries = random_corpus(20240901, 30);
  int cartan_only_seen = 0;
  for (int idx = 0; idx < (int)entries.size(); ++idx) {
    const CorpusEntry& e = entries[idx];
    CHECK(e.id == [&] {
      char buf[16];
      snprintf(buf, sizeof buf, "z%04d", idx + 1);
      return std::string(buf);
    }());
    const auto& R = *e.z.algebra();
    CHECK((R.name() == "A1" || R.name() == "A2"));
    CHECK(e.z.loop_rank() >= 2);
    CHECK(e.z.loop_rank() <= 3);
    CHECK(!e.z.is_zero());
    CHECK(e.z.degree() >= 1);
    CHECK(e.z.degree() <= 3);
    CHECK(e.z.terms().size() <= 4);

    bool cartan_only = true;
    for (const auto& [m, coeff] : e.z.terms()) {
      CHECK(!is_zero(coeff));
      for (const auto& [g, exp] : m.factors) {
        CHECK(g.kind == LoopGen::Kind::loop);
        CHECK(exp >= 1);
        if (!R.is_cartan(g.x)) cartan_only = false;
        for (int i = 0; i < g.n.size(); ++i) {
          CHECK(g.n.e[i] >= -3);
          CHECK(g.n.e[i] <= 3);
        }
        CHECK(g.n.last() <= -1);
      }
    }
    if (idx % 3 == 2) {
      CHECK(cartan_only);
      ++cartan_only_seen;
    }
  }
  CHECK(cartan_only_seen == 10);
}

TEST_CASE("corpus JSON round-trips exactly") {
  auto entries = random_corpus(20240901, 8);
  Json j = corpus_json(20240901, entries);
  auto back = corpus_parse(j);
  REQUIRE(back.size() == entries.size());
  for (size_t i = 0; i < entries.size(); ++i) {
    CHECK(back[i].id == entries[i].id);
    CHECK(back[i].z.loop_rank() == entries[i].z.loop_rank());
    CHECK(back[i].z.algebra()->name() == entries[i].z.algebra()->name());
    CHECK(back[i].z.terms() == entries[i].z.terms());
  }
  CHECK(dump_json(corpus_json(20240901, back)) == dump_json(j));
}

static void check_same_results(const std::vector<CorpusResult>& a,
                               const std::vector<CorpusResult>& b) {
  REQUIRE(a.size() == b.size());
  for (size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].id == b[i].id);
    CHECK(a[i].ok == b[i].ok);
    CHECK(a[i].case_id == b[i].case_id);
    CHECK(a[i].degree == b[i].degree);
    CHECK(a[i].p0 == b[i].p0);
    CHECK(a[i].predicted == b[i].predicted);
    CHECK(a[i].r_lo == b[i].r_lo);
    CHECK(a[i].r_hi == b[i].r_hi);
    CHECK(a[i].error == b[i].error);
  }
}

TEST_CASE("corpus sweep: parallel agrees with the serial reference") {
  auto entries = random_corpus(20240901, 12);
  auto serial = corpus_sweep_serial(entries, 2);
  auto par1 = corpus_sweep(entries, 2, 1);
  auto par4 = corpus_sweep(entries, 2, 4);

  check_same_results(serial, par1);
  check_same_results(serial, par4);
  CHECK(corpus_checksum(serial) == corpus_checksum(par4));

  int case1 = 0, case2 = 0;
  for (const CorpusResult& r : serial) {
    CHECK(r.ok);
    CHECK(r.error.empty());
    CHECK(r.r_hi == r.r_lo + 2);
    CHECK(r.p0 >= 1);
    CHECK(!is_zero(r.predicted));
    (r.case_id == 1 ? case1 : case2)++;
  }
  CHECK(case1 > 0);
  CHECK(case2 > 0);

  auto again = corpus_sweep(entries, 2, 4);
  CHECK(corpus_checksum(again) == corpus_checksum(serial));
}

TEST_CASE("corpus sweep captures per-entry failures without aborting") {
  auto R = RootSystemData::build('A', 1);
  PbwContext U(R, 2);
  std::vector<CorpusEntry> entries = random_corpus(20240901, 3);
  entries.push_back(CorpusEntry{"unit", U.unit()});  // constant, analyze must refuse

  auto res = corpus_sweep(entries, 2, 2);
  REQUIRE(res.size() == 4);
  CHECK(res[3].id == "unit");
  CHECK(!res[3].ok);
  CHECK(!res[3].error.empty());
  for (int i = 0; i < 3; ++i) CHECK(res[i].ok);

  CHECK(corpus_checksum(res) == corpus_checksum(corpus_sweep_serial(entries, 2)));
}

TEST_CASE("corpus checksum reacts to any field change") {
  auto entries = random_corpus(20240901, 4);
  auto res = corpus_sweep_serial(entries, 1);
  auto tweaked = res;
  tweaked[2].ok = !tweaked[2].ok;
  CHECK(corpus_checksum(res) != corpus_checksum(tweaked));

  Json rep = corpus_report_json(res);
  CHECK(rep.at("total").get<int>() == 4);
  CHECK(rep.at("passed").get<int>() == 4);
  CHECK(rep.at("checksum").get<std::string>().size() == 16);
}

TEST_CASE("energy sweep on a single-loop module: all classical, all pass") {
  auto R = RootSystemData::build('A', 1);
  AlgebraConfig cfg{R, 1, 2};
  auto base = std::make_shared<WeylModule>(R, Weight{{0}});
  auto M = TowerModule::induce(cfg, base, TruncationBox{2, 0});

  auto grid = energy_grid(*M, 1, 1);
  REQUIRE(!grid.empty());
  auto serial = energy_sweep_serial(*M, grid);
  auto par = energy_sweep(*M, grid, 3);
  REQUIRE(serial.size() == grid.size());
  CHECK(energy_checksum(serial) == energy_checksum(par));

  for (const EnergyResult& r : serial) {
    CHECK(!r.overflow);
    CHECK(r.classical);
    CHECK(r.ok);
    CHECK(r.error.empty());
    CHECK(r.lhs_hash == r.rhs_hash);
    CHECK(r.lhs_hash.size() == 16);
  }
}

TEST_CASE("energy sweep on a two-loop module: mixed branches, deterministic") {
  auto R = RootSystemData::build('A', 1);
  AlgebraConfig cfg{R, 2, 2};
  auto base = std::make_shared<WeylModule>(R, Weight{{0}});
  auto L1 = TowerModule::induce(cfg, base, TruncationBox{2, 0});
  auto M = TowerModule::induce(cfg, L1, TruncationBox{2, 1});

  auto grid = energy_grid(*M, 1, 1);
  REQUIRE(!grid.empty());
  auto serial = energy_sweep_serial(*M, grid);
  auto par = energy_sweep(*M, grid, 4);
  CHECK(energy_checksum(serial) == energy_checksum(par));

  int checked = 0, classical = 0, theorem = 0;
  for (const EnergyResult& r : serial) {
    CHECK(r.error.empty());
    if (r.overflow) continue;
    CHECK(r.ok);
    ++checked;
    (r.classical ? classical : theorem)++;
  }
  CHECK(checked >= 20);
  CHECK(classical > 0);
  CHECK(theorem > 0);

  Json rep = energy_report_json(*M, grid, serial);
  CHECK(rep.at("total").get<int>() == (int)grid.size());
  CHECK(rep.at("checked").get<int>() == checked);
  CHECK(rep.at("passed").get<int>() == checked);
  CHECK(dump_json(rep) == dump_json(energy_report_json(*M, grid, par)));
}
