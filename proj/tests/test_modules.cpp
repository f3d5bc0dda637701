#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "mla/module_checks.hpp"
#include "mla/modules.hpp"

using namespace mla;

namespace {

AlgebraConfig a1_cfg(int k, long p) {
  return AlgebraConfig{RootSystemData::from_name("A1"), k, p};
}

Weight wt(std::initializer_list<int> c) { return Weight{std::vector<int>(c)}; }

}  // namespace

TEST_CASE("finite highest weight modules match the Weyl dimension formula") {
  auto R = RootSystemData::from_name("A1");
  CHECK(WeylModule(R, wt({0})).dim() == 1);
  CHECK(WeylModule(R, wt({1})).dim() == 2);
  CHECK(WeylModule(R, wt({2})).dim() == 3);
  CHECK(WeylModule(R, wt({5})).dim() == 6);

  auto R2 = RootSystemData::from_name("A2");
  CHECK(WeylModule(R2, wt({1, 0})).dim() == 3);
  CHECK(WeylModule(R2, wt({1, 1})).dim() == 8);

  auto R3 = RootSystemData::from_name("A3");
  CHECK(WeylModule(R3, wt({1, 0, 1})).dim() == 15);
}

TEST_CASE("sl2 three-dimensional module acts and pairs as expected") {
  auto R = RootSystemData::from_name("A1");
  WeylModule V(R, wt({2}));
  Chev h{0}, f{1}, e{2};

  // weights 2w, 0, -2w down the f-chain
  CHECK(V.weight_of(0) == wt({2}));
  CHECK(V.weight_of(1) == wt({0}));
  CHECK(V.weight_of(2) == wt({-2}));

  // h eigenvalues in the coweight normalization: lambda(h1) = 1, 0, -1
  CHECK(V.action(h, 0).at(0) == Rat(1));
  CHECK(V.action(h, 1).empty());
  CHECK(V.action(h, 2).at(2) == Rat(-1));

  // f moves down the chain with coefficient 1 (basis = f^m v0)
  CHECK(V.action(f, 0).at(1) == Rat(1));
  CHECK(V.action(f, 1).at(2) == Rat(1));
  CHECK(V.action(f, 2).empty());

  // e f^m v0 = m(n - m + 1) f^{m-1} v0 for n = 2
  CHECK(V.action(e, 1).at(0) == Rat(2));
  CHECK(V.action(e, 2).at(1) == Rat(2));

  CHECK(V.pair(0, 0) == Rat(1));
  CHECK(V.pair(1, 1) == Rat(2));
  CHECK(V.pair(2, 2) == Rat(4));
  CHECK(V.pair(0, 1) == Rat(0));

  // contravariance on the finite module
  for (int g = 0; g < 3; ++g) {
    Chev a{g}, s = R->sigma(a);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        Rat lhs(0), rhs(0);
        for (const auto& [t, c] : V.action(a, i)) lhs += c * V.pair(t, j);
        for (const auto& [t, c] : V.action(s, j)) rhs += c * V.pair(i, t);
        CHECK(lhs == rhs);
      }
    }
  }
}

TEST_CASE("first induction: sizes, grading, and the basic Gram entry") {
  AlgebraConfig cfg = a1_cfg(1, 2);
  auto V0 = std::make_shared<WeylModule>(cfg.R, wt({0}));

  auto ind2 = TowerModule::induce(cfg, V0, {2, 0});
  CHECK(ind2->dim() == 13);
  auto ind3 = TowerModule::induce(cfg, V0, {3, 0});
  CHECK(ind3->dim() == 35);

  // highest vector sits alone in degree 0
  int top = ind3->index_of(TowerKey{{PbwMonomial{}}, 0});
  REQUIRE(top >= 0);
  CHECK(ind3->d_tuple(top) == std::vector<int>{0});

  // <f(-1)v, f(-1)v> = lambda(h) + level = -4 at p = 2
  Chev f{1};
  TowerKey fk{{PbwMonomial{{{loop_gen(f, delta_index(1, 0, -1)), 1}}}}, 0};
  int fi = ind3->index_of(fk);
  REQUIRE(fi >= 0);
  CHECK(ind3->pair(fi, fi) == Rat(-4));
  CHECK(cfg.level(0) == Rat(-4));

  // max d_1 eigenvalue equals the shift, all blocks at or below
  for (int i = 0; i < ind3->dim(); ++i) CHECK(ind3->d_tuple(i)[0] <= 0);

  auto shifted = TowerModule::induce(cfg, V0, {2, 0}, 5);
  for (int i = 0; i < shifted->dim(); ++i) CHECK(shifted->d_tuple(i)[0] <= 5);
  CHECK(shifted->blocks().begin()->first.d[0] >= 5 - 2);
}

TEST_CASE("level-one radicals across highest weights, against dense kernels") {
  for (long p : {2L, 3L}) {
    AlgebraConfig cfg = a1_cfg(1, p);
    for (int lam : {0, 1, 2}) {
      auto V = std::make_shared<WeylModule>(cfg.R, wt({lam}));
      auto ind = TowerModule::induce(cfg, V, {2, 0});
      auto quo = TowerModule::induce(cfg, V, {2, 0}, 0, true);

      int rad_total = 0;
      for (const auto& [bk, ids] : ind->blocks()) {
        int kr = kernel_dim(ind->gram(bk));
        CHECK(quo->radical_dim(bk) == kr);  // independent dense kernel
        CHECK(quo->parent_dim(bk) == static_cast<int>(ids.size()));
        rad_total += kr;
      }
      CHECK(quo->dim() == ind->dim() - rad_total);

      if (p == 2 && lam == 0) CHECK(rad_total == 0);
      if (p == 2 && lam == 1) CHECK(rad_total == 0);
      if (p == 2 && lam == 2) {
        // one radical line at depth 1 and three at depth 2
        CHECK(quo->radical_dim(BlockKey{{-1}, wt({0})}) == 1);
        CHECK(quo->radical_dim(BlockKey{{-2}, wt({-2})}) == 1);
        CHECK(quo->radical_dim(BlockKey{{-2}, wt({0})}) == 1);
        CHECK(quo->radical_dim(BlockKey{{-2}, wt({2})}) == 1);
        CHECK(rad_total == 4);
        CHECK(ind->dim() == 39);
        CHECK(quo->dim() == 35);
      }

      // degree-0 block of the quotient is the base, always
      CHECK(quo->radical_dim(BlockKey{{0}, wt({lam})}) == 0);
      const auto& deg0 = quo->blocks().at(BlockKey{{0}, wt({lam})});
      CHECK(static_cast<int>(deg0.size()) == static_cast<int>(V->weight_blocks().at(wt({lam})).size()));
    }
  }
}

TEST_CASE("quotient reduction preserves the commutation relations") {
  AlgebraConfig cfg = a1_cfg(1, 2);
  auto V = std::make_shared<WeylModule>(cfg.R, wt({2}));
  auto quo = TowerModule::induce(cfg, V, {2, 0}, 0, true);

  int checked = 0;
  std::vector<LoopGen> gens = window_generators(*cfg.R, 1, 0, 2);
  for (const LoopGen& a : gens) {
    for (const LoopGen& b : gens) {
      std::vector<std::pair<LoopGen, Rat>> br;
      bracket_gen(*cfg.R, a, b, br);
      for (int i = 0; i < quo->dim(); ++i) {
        SparseVec lhs, rhs;
        try {
          for (const auto& [j, c] : quo->act_gen(b, i)) sv_axpy(lhs, quo->act_gen(a, j), c);
          for (const auto& [j, c] : quo->act_gen(a, i)) sv_axpy(lhs, quo->act_gen(b, j), -c);
          for (const auto& [z, c] : br) sv_axpy(rhs, quo->act_gen(z, i), c);
        } catch (const box_overflow&) {
          continue;
        }
        CHECK(lhs == rhs);
        ++checked;
      }
    }
  }
  CHECK(checked > 300);
}

TEST_CASE("action relations a(bv) - b(av) = [a,b]v hold exactly in the window") {
  AlgebraConfig cfg = a1_cfg(2, 2);
  auto V = std::make_shared<WeylModule>(cfg.R, wt({0}));
  auto base = TowerModule::induce(cfg, V, {2, 0}, 0, true);
  auto M = TowerModule::induce(cfg, base, {2, 2});

  std::mt19937 rng(20240901);
  std::vector<LoopGen> gens = window_generators(*cfg.R, 2, 1, 2);
  std::uniform_int_distribution<int> pick_gen(0, static_cast<int>(gens.size()) - 1);
  std::uniform_int_distribution<int> pick_vec(0, M->dim() - 1);

  int done = 0;
  for (int trial = 0; trial < 400 && done < 60; ++trial) {
    const LoopGen& a = gens[pick_gen(rng)];
    const LoopGen& b = gens[pick_gen(rng)];
    int i = pick_vec(rng);
    SparseVec lhs;
    try {
      SparseVec bv = M->act_gen(b, i);
      SparseVec av = M->act_gen(a, i);
      for (const auto& [j, c] : bv) sv_axpy(lhs, M->act_gen(a, j), c);
      for (const auto& [j, c] : av) sv_axpy(lhs, M->act_gen(b, j), -c);
    } catch (const box_overflow&) {
      continue;
    }
    std::vector<std::pair<LoopGen, Rat>> br;
    bracket_gen(*cfg.R, a, b, br);
    SparseVec rhs;
    for (const auto& [z, c] : br) sv_axpy(rhs, M->act_gen(z, i), c);
    CHECK(lhs == rhs);
    ++done;
  }
  CHECK(done >= 60);
}

TEST_CASE("contravariance of the form against generator actions") {
  AlgebraConfig cfg = a1_cfg(2, 2);
  auto V = std::make_shared<WeylModule>(cfg.R, wt({1}));
  auto base = TowerModule::induce(cfg, V, {2, 0}, 0, true);
  auto M = TowerModule::induce(cfg, base, {1, 1});

  std::mt19937 rng(7);
  std::vector<LoopGen> gens = window_generators(*cfg.R, 2, 1, 1);
  std::uniform_int_distribution<int> pick_gen(0, static_cast<int>(gens.size()) - 1);
  std::uniform_int_distribution<int> pick_vec(0, M->dim() - 1);

  int done = 0;
  for (int trial = 0; trial < 300 && done < 40; ++trial) {
    const LoopGen& a = gens[pick_gen(rng)];
    LoopGen s = loop_gen(cfg.R->sigma(a.x), -a.n);
    int i = pick_vec(rng);
    int j = pick_vec(rng);
    Rat lhs(0), rhs(0);
    try {
      for (const auto& [t, c] : M->act_gen(a, i)) lhs += c * M->pair(t, j);
      for (const auto& [t, c] : M->act_gen(s, j)) rhs += c * M->pair(i, t);
    } catch (const box_overflow&) {
      continue;
    }
    CHECK(lhs == rhs);
    ++done;
  }
  CHECK(done >= 40);
}

TEST_CASE("central generators act by the fixed level scalars") {
  for (long p : {2L, 3L}) {
    AlgebraConfig cfg = a1_cfg(2, p);
    auto V = std::make_shared<WeylModule>(cfg.R, wt({1}));
    auto base = TowerModule::induce(cfg, V, {1, 0}, 0, true);
    auto M = TowerModule::induce(cfg, base, {1, 1});
    Rat c1 = cfg.level(0), c2 = cfg.level(1);
    CHECK(c1 == Rat(-2 - p));
    CHECK(c2 == Rat(-2 - p * p));
    for (int i = 0; i < M->dim(); i += 3) {
      CHECK(M->act_gen(central_gen(0, 2), i) == SparseVec{{i, c1}});
      CHECK(M->act_gen(central_gen(1, 2), i) == SparseVec{{i, c2}});
    }
  }
}

TEST_CASE("derivations read the graded degrees off the key") {
  AlgebraConfig cfg = a1_cfg(2, 2);
  auto V = std::make_shared<WeylModule>(cfg.R, wt({0}));
  auto base = TowerModule::induce(cfg, V, {2, 0}, 3, true);  // shifted base
  auto M = TowerModule::induce(cfg, base, {2, 1}, -1);

  CHECK(M->shifts() == std::vector<int>{3, -1});
  for (int i = 0; i < M->dim(); ++i) {
    const auto& d = M->d_tuple(i);
    CHECK(M->act_gen(derivation_gen(0, 2), i) == SparseVec{{i, Rat(d[0])}});
    CHECK(M->act_gen(derivation_gen(1, 2), i) == SparseVec{{i, Rat(d[1])}});
    CHECK(d[1] <= -1);  // the level axis is capped by its shift
    std::vector<int> raw = tower_d_raw(M->key(i));
    CHECK(d[0] == raw[0] + 3);
    CHECK(d[1] == raw[1] - 1);
  }
}

TEST_CASE("second induction reproduces the frozen depth-one radical lines") {
  AlgebraConfig cfg = a1_cfg(2, 2);
  auto V = std::make_shared<WeylModule>(cfg.R, wt({0}));
  auto base = TowerModule::induce(cfg, V, {2, 0}, 0, true);
  auto M = TowerModule::induce(cfg, base, {2, 2});

  std::map<BlockKey, int> found;
  for (const auto& [bk, ids] : M->blocks()) {
    if (bk.d[1] != -1) continue;
    int kd = kernel_dim(M->gram(bk));
    if (kd > 0) found[bk] = kd;
  }
  std::map<BlockKey, int> expected;
  for (int w : {-4, -2, 0, 2, 4}) expected[BlockKey{{1, -1}, wt({w})}] = 1;
  CHECK(found == expected);
}

TEST_CASE("degree-zero pairing equals the base pairing") {
  AlgebraConfig cfg = a1_cfg(2, 2);
  auto V = std::make_shared<WeylModule>(cfg.R, wt({2}));
  auto base = TowerModule::induce(cfg, V, {2, 0}, 0, true);
  auto M = TowerModule::induce(cfg, base, {1, 1});

  for (int bi = 0; bi < base->dim(); ++bi) {
    for (int bj = 0; bj < base->dim(); ++bj) {
      TowerKey ki = base->key(bi), kj = base->key(bj);
      ki.monos.push_back(PbwMonomial{});
      kj.monos.push_back(PbwMonomial{});
      int i = M->index_of(ki), j = M->index_of(kj);
      REQUIRE(i >= 0);
      REQUIRE(j >= 0);
      CHECK(M->pair(i, j) == base->pair(bi, bj));
    }
  }
}

TEST_CASE("depth-zero induction adds nothing") {
  AlgebraConfig cfg = a1_cfg(2, 2);
  auto V = std::make_shared<WeylModule>(cfg.R, wt({1}));
  auto base = TowerModule::induce(cfg, V, {2, 0}, 0, true);
  auto M = TowerModule::induce(cfg, base, {0, 0});
  CHECK(M->dim() == base->dim());
  for (int i = 0; i < M->dim(); ++i) CHECK(M->d_tuple(i)[1] == 0);
}

TEST_CASE("box overflow is flagged, never silently truncated") {
  AlgebraConfig cfg = a1_cfg(1, 2);
  auto V = std::make_shared<WeylModule>(cfg.R, wt({0}));
  auto M = TowerModule::induce(cfg, V, {2, 0});

  Chev f{1};
  TowerKey deep{{PbwMonomial{{{loop_gen(f, delta_index(1, 0, -2)), 1}}}}, 0};
  int i = M->index_of(deep);
  REQUIRE(i >= 0);
  CHECK_THROWS_AS(M->act_gen(loop_gen(f, delta_index(1, 0, -1)), i), box_overflow);

  AlgebraConfig cfg2 = a1_cfg(2, 2);
  auto base = TowerModule::induce(cfg2, V, {1, 0}, 0, true);
  auto M2 = TowerModule::induce(cfg2, base, {1, 1});
  TowerKey lat{{PbwMonomial{}, PbwMonomial{{{loop_gen(f, MultiIndex{{1, -1}}), 1}}}}, 0};
  int j = M2->index_of(lat);
  REQUIRE(j >= 0);
  CHECK_THROWS_AS(M2->act_gen(loop_gen(Chev{0}, MultiIndex{{1, 0}}), j), box_overflow);
}

TEST_CASE("v_norm sums the distinct depths carrying a component") {
  AlgebraConfig cfg = a1_cfg(1, 2);
  auto V = std::make_shared<WeylModule>(cfg.R, wt({0}));
  auto M = TowerModule::induce(cfg, V, {3, 0});

  Chev h{0}, f{1};
  int v0 = M->index_of(TowerKey{{PbwMonomial{}}, 0});
  int d1 = M->index_of(TowerKey{{PbwMonomial{{{loop_gen(f, delta_index(1, 0, -1)), 1}}}}, 0});
  int d2 = M->index_of(TowerKey{{PbwMonomial{{{loop_gen(f, delta_index(1, 0, -2)), 1}}}}, 0});
  int h2 = M->index_of(TowerKey{{PbwMonomial{{{loop_gen(h, delta_index(1, 0, -2)), 1}}}}, 0});
  REQUIRE(v0 >= 0);
  REQUIRE(d1 >= 0);
  REQUIRE(d2 >= 0);
  REQUIRE(h2 >= 0);

  CHECK(v_norm_k(*M, SparseVec{{v0, Rat(3)}}) == 0);
  CHECK(v_norm_k(*M, SparseVec{{v0, Rat(1)}, {d2, Rat(1)}}) == 2);
  CHECK(v_norm_k(*M, SparseVec{{d1, Rat(2)}, {d2, Rat(5)}}) == 3);
  CHECK(v_norm_k(*M, SparseVec{{d1, Rat(1)}, {d2, Rat(1)}, {h2, Rat(-1)}}) == 3);
  CHECK_THROWS_AS(v_norm_k(*M, SparseVec{}), std::invalid_argument);
}

TEST_CASE("commutant of an irreducible truncation is the scalars; doubling gives two") {
  AlgebraConfig cfg = a1_cfg(1, 2);
  auto V = std::make_shared<WeylModule>(cfg.R, wt({0}));
  auto q = TowerModule::induce(cfg, V, {2, 0}, 0, true);

  CommutantReport r = commutant_dimension(*q);
  CHECK(r.dimension == 1);
  CHECK(r.unknowns > 1);

  auto q_shift = TowerModule::induce(cfg, V, {2, 0}, 7, true);
  DirectSumAction doubled(q, q_shift);
  std::vector<LoopGen> gens = window_generators(*cfg.R, 1, 0, 2);
  CommutantReport r2 = commutant_dimension(doubled, gens);
  CHECK(r2.dimension == 2);

  AlgebraConfig cfg3 = a1_cfg(1, 3);
  auto q3 = TowerModule::induce(cfg3, std::make_shared<WeylModule>(cfg3.R, wt({2})), {2, 0}, 0, true);
  CHECK(commutant_dimension(*q3).dimension == 1);
}

TEST_CASE("commutant stays one dimensional at level two") {
  AlgebraConfig cfg = a1_cfg(2, 2);
  auto V = std::make_shared<WeylModule>(cfg.R, wt({0}));
  auto base = TowerModule::induce(cfg, V, {1, 0}, 0, true);
  auto q2 = TowerModule::induce(cfg, base, {1, 1}, 0, true);
  CommutantReport r = commutant_dimension(*q2);
  CHECK(r.dimension == 1);
}

TEST_CASE("quotients are cogenerated by the degree-zero block") {
  AlgebraConfig cfg = a1_cfg(1, 2);
  auto V0 = std::make_shared<WeylModule>(cfg.R, wt({0}));
  auto q = TowerModule::induce(cfg, V0, {2, 0}, 0, true);
  CogenerationReport r = cogeneration_check(*q);
  CHECK(r.ok);
  CHECK(r.blocks_checked > 0);

  auto V2 = std::make_shared<WeylModule>(cfg.R, wt({2}));
  auto q2 = TowerModule::induce(cfg, V2, {2, 0}, 0, true);
  CHECK(cogeneration_check(*q2).ok);

  // same statement read through the Gram pairing on the plain induction
  auto ind = TowerModule::induce(cfg, V2, {2, 0});
  CogenerationReport r2 = cogeneration_check(*ind, 2);
  CHECK(r2.ok);
}

TEST_CASE("radical vectors stay radical under in-window actions") {
  AlgebraConfig cfg = a1_cfg(1, 2);
  auto V2 = std::make_shared<WeylModule>(cfg.R, wt({2}));
  auto ind = TowerModule::induce(cfg, V2, {2, 0});
  std::vector<LoopGen> gens = window_generators(*cfg.R, 1, 0, 2);
  RadicalClosureReport r = radical_closure_check(*ind, 2, gens);
  CHECK(r.ok);
  CHECK(r.radical_vectors == 4);
  CHECK(r.blocks_checked == 4);
  // raising never leaves a single-axis window, so nothing is excluded
  CHECK(r.pairings_skipped == 0);
}

TEST_CASE("radical closure at two loops excludes lateral-boundary pairings") {
  // at the lateral edge of the window the restricted form picks up radical
  // vectors with no in-window sigma certificate; those pairings are outside
  // the assertion set, and the remaining ones all close
  AlgebraConfig cfg = a1_cfg(2, 2);
  auto V2 = std::make_shared<WeylModule>(cfg.R, wt({2}));
  auto base = TowerModule::induce(cfg, V2, {2, 0}, 0, true);
  auto M = TowerModule::induce(cfg, base, {2, 1});
  RadicalClosureReport r = radical_closure_check(*M, 1, window_generators(*cfg.R, 2, 1, 1));
  CHECK(r.ok);
  CHECK(r.blocks_checked == 3);
  CHECK(r.radical_vectors == 3);
  CHECK(r.families_skipped == 15);
  CHECK(r.pairings_skipped == 291);
}

TEST_CASE("irreducible quotient helper reuses the same box and shift") {
  AlgebraConfig cfg = a1_cfg(1, 3);
  auto V = std::make_shared<WeylModule>(cfg.R, wt({2}));
  auto ind = TowerModule::induce(cfg, V, {2, 0}, 4);
  auto q = irreducible_quotient(ind);
  CHECK(q->is_quotient());
  CHECK(q->shifts() == std::vector<int>{4});
  CHECK(q->box().depth == 2);
  CHECK(q->dim() <= ind->dim());
}

TEST_CASE("shifted action check separates a candidate from every shifted target") {
  AlgebraConfig cfg = a1_cfg(2, 2);
  auto V = std::make_shared<WeylModule>(cfg.R, wt({0}));
  auto base = TowerModule::induce(cfg, V, {2, 0}, 0, true);
  auto M = TowerModule::induce(cfg, base, {2, 2});

  // radical line at ((1,-1), wt 0) gives the candidate vector
  BlockKey bk{{1, -1}, wt({0})};
  QMat g = M->gram(bk);
  QMat ker = kernel_basis(g);
  REQUIRE(ker.size() == 1);
  const auto& ids = M->blocks().at(bk);
  SparseVec cand;
  for (size_t i = 0; i < ids.size(); ++i)
    if (!is_zero(ker[0][i])) cand[ids[i]] = ker[0][i];

  ShiftActionReport sr = shift_nonvanishing_check(*M, cand, 3, 4);
  CHECK(sr.ok);
  CHECK(sr.commutator_nonzero);
  CHECK(sr.base_annihilated);
  CHECK(sr.r_lo >= 3);

  // spec'd example vector: non-constant PBW part over the top of the base
  Chev f{1};
  TowerKey vk{{PbwMonomial{}, PbwMonomial{{{loop_gen(f, MultiIndex{{0, -1}}), 1}}}}, 0};
  int vi = M->index_of(vk);
  REQUIRE(vi >= 0);
  std::vector<TowerModulePtr> targets;
  for (int lam : {0, 1, 2}) {
    auto Vt = std::make_shared<WeylModule>(cfg.R, wt({lam}));
    for (int m : {0, 1}) {
      for (int n : {0, -1}) {
        auto tb = TowerModule::induce(cfg, Vt, {2, 0}, m, true);
        targets.push_back(TowerModule::induce(cfg, tb, {1, 1}, n, true));
      }
    }
  }
  DistinguishReport dr =
      distinguishability_check(*M, {cand, SparseVec{{vi, Rat(1)}}}, targets, 3);
  CHECK(dr.distinguishable);
  CHECK(dr.verdict == "not isomorphic as g̃_k-modules");
  CHECK(dr.targets.size() == 12);
  for (const auto& t : dr.targets) {
    CHECK(t.annihilated);
    CHECK(t.degree0_dim > 0);
  }

  // all-constant candidates are rejected
  int one = M->index_of(TowerKey{{PbwMonomial{}, PbwMonomial{}}, 0});
  REQUIRE(one >= 0);
  CHECK_THROWS_AS(shift_nonvanishing_check(*M, SparseVec{{one, Rat(1)}}, 1, 2),
                  std::domain_error);
}
