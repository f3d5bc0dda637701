#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "mla/root_system.hpp"

using namespace mla;

namespace {

Chev root_vec(const RootSystemData& R, std::initializer_list<int> c) {
  Root r;
  r.c = c;
  return R.root_vector(r);
}

GCombo single(Chev g) { return GCombo{{g, Rat(1)}}; }

}  // namespace

TEST_CASE("sl2 Chevalley relations under the coweight Cartan basis") {
  auto R = RootSystemData::build('A', 1);
  CHECK(R->dim() == 3);
  CHECK(R->rank() == 1);
  Chev h = R->cartan(0);
  Chev f = root_vec(*R, {-1});
  Chev e = root_vec(*R, {1});
  // Basis order: Cartan first, then roots by height.
  CHECK(h.id == 0);
  CHECK(f.id == 1);
  CHECK(e.id == 2);

  CHECK(R->bracket(h, e) == GCombo{{e, Rat(1)}});
  CHECK(R->bracket(h, f) == GCombo{{f, Rat(-1)}});
  CHECK(R->bracket(e, f) == GCombo{{h, Rat(2)}});  // coroot = 2 h_1
  CHECK(R->bracket(h, h).empty());

  CHECK(R->form(e, f) == Rat(1));
  CHECK(R->form(h, h) == Rat(1, 2));
  CHECK(R->form(e, e) == Rat(0));
  CHECK(R->form(h, e) == Rat(0));

  CHECK(R->dual_coxeter() == 2);
  CHECK(R->eval_root_on_h(R->root_of(e), 0) == 1);
  CHECK(R->root_weight(R->root_of(e)).c == std::vector<int>{2});
  CHECK(R->form_weights(R->root_weight(R->root_of(e)), R->root_weight(R->root_of(e))) ==
        Rat(2));
}

TEST_CASE("dual bases pair to the identity") {
  for (int rank : {1, 2, 3}) {
    auto R = RootSystemData::build('A', rank);
    const auto& dual = R->dual_basis();
    REQUIRE((int)dual.size() == R->dim());
    for (std::size_t a = 0; a < dual.size(); ++a)
      for (std::size_t b = 0; b < dual.size(); ++b) {
        Rat v = R->form(single(dual[a].first), dual[b].second);
        CHECK(v == (a == b ? Rat(1) : Rat(0)));
      }
  }
}

TEST_CASE("A2 root enumeration matches an independent count") {
  auto R = RootSystemData::build('A', 2);
  CHECK(R->dim() == 8);
  CHECK(R->dual_coxeter() == 3);

  // Independent enumeration: type A roots are the consecutive sums
  // +-(alpha_i + ... + alpha_j).
  std::set<Root> expect;
  for (int i = 0; i < 2; ++i)
    for (int j = i; j < 2; ++j)
      for (int sgn : {1, -1}) {
        Root r;
        r.c.assign(2, 0);
        for (int t = i; t <= j; ++t) r.c[t] = sgn;
        expect.insert(r);
      }
  std::set<Root> got(R->roots().begin(), R->roots().end());
  CHECK(got == expect);

  Root theta = R->highest_root();
  CHECK(theta.c == std::vector<int>{1, 1});
  CHECK(R->form_weights(R->root_weight(theta), R->root_weight(theta)) == Rat(2));

  // Cartan matrix recovered from the induced form on weights.
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      Weight ai = R->root_weight(R->simple_root(i));
      Weight aj = R->root_weight(R->simple_root(j));
      Rat a = Rat(2) * R->form_weights(ai, aj) / R->form_weights(aj, aj);
      CHECK(a == Rat(R->cartan_entry(i, j)));
    }
}

TEST_CASE("Jacobi identity and antisymmetry on full bases") {
  for (int rank : {1, 2}) {
    auto R = RootSystemData::build('A', rank);
    int d = R->dim();
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) {
        GCombo ab = R->bracket(Chev{a}, Chev{b});
        GCombo ba = R->bracket(Chev{b}, Chev{a});
        gc_axpy(ab, ba, Rat(1));
        CHECK(ab.empty());
        for (int c = 0; c < d; ++c) {
          GCombo s = R->bracket(R->bracket(Chev{a}, Chev{b}), single(Chev{c}));
          gc_axpy(s, R->bracket(R->bracket(Chev{b}, Chev{c}), single(Chev{a})), Rat(1));
          gc_axpy(s, R->bracket(R->bracket(Chev{c}, Chev{a}), single(Chev{b})), Rat(1));
          CHECK(s.empty());
        }
      }
  }
}

TEST_CASE("form invariance on full bases") {
  for (int rank : {1, 2}) {
    auto R = RootSystemData::build('A', rank);
    int d = R->dim();
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b)
        for (int c = 0; c < d; ++c) {
          Rat lhs = R->form(R->bracket(Chev{a}, Chev{b}), single(Chev{c}));
          Rat rhs = R->form(single(Chev{a}), R->bracket(Chev{b}, Chev{c}));
          CHECK(lhs == rhs);
        }
  }
}

TEST_CASE("Casimir contraction gives twice the dual Coxeter number") {
  for (int rank : {1, 2, 3}) {
    auto R = RootSystemData::build('A', rank);
    for (int x = 0; x < R->dim(); ++x) {
      GCombo acc;
      for (const auto& [ej, ejdual] : R->dual_basis()) {
        GCombo inner = R->bracket(single(Chev{x}), single(ej));
        gc_axpy(acc, R->bracket(inner, ejdual), Rat(1));
      }
      GCombo expect = gc_scale(single(Chev{x}), Rat(2 * R->dual_coxeter()));
      CHECK(acc == expect);
    }
  }
}

TEST_CASE("Weyl group and longest element images") {
  auto R1 = RootSystemData::build('A', 1);
  CHECK(R1->weyl_group().size() == 2);
  CHECK(R1->w0_image(Weight{{3}}).c == std::vector<int>{-3});

  auto R2 = RootSystemData::build('A', 2);
  CHECK(R2->weyl_group().size() == 6);
  CHECK(R2->w0_image(Weight{{1, 0}}).c == std::vector<int>{0, -1});
  CHECK(R2->w0_image(Weight{{2, 1}}).c == std::vector<int>{-1, -2});

  auto R3 = RootSystemData::build('A', 3);
  CHECK(R3->weyl_group().size() == 24);

  // Orbit of a dominant weight under the full group stays in the weight
  // lattice and the form is invariant.
  Weight lam{{2, 1}};
  for (const auto& w : R2->weyl_group()) {
    Weight im = R2->weyl_act(w, lam);
    CHECK(R2->form_weights(im, im) == R2->form_weights(lam, lam));
  }
}

TEST_CASE("Weyl dimension formula on known cases") {
  auto R1 = RootSystemData::build('A', 1);
  for (int m = 0; m <= 6; ++m) CHECK(R1->weyl_dimension(Weight{{m}}) == m + 1);
  auto R2 = RootSystemData::build('A', 2);
  CHECK(R2->weyl_dimension(Weight{{0, 0}}) == 1);
  CHECK(R2->weyl_dimension(Weight{{1, 0}}) == 3);
  CHECK(R2->weyl_dimension(Weight{{0, 1}}) == 3);
  CHECK(R2->weyl_dimension(Weight{{1, 1}}) == 8);
  CHECK(R2->weyl_dimension(Weight{{2, 0}}) == 6);
  auto R3 = RootSystemData::build('A', 3);
  CHECK(R3->weyl_dimension(Weight{{1, 0, 0}}) == 4);
  CHECK(R3->weyl_dimension(Weight{{0, 1, 0}}) == 6);
}

TEST_CASE("simple coordinate conversions round trip") {
  auto R = RootSystemData::build('A', 2);
  // rho in simple coordinates for A2 is (1,1) scaled: alpha1+alpha2 has
  // fundamental coords (1,1), so rho = theta here.
  auto s = R->simple_coords(R->rho());
  CHECK(s[0] == Rat(1));
  CHECK(s[1] == Rat(1));
  // Root weights evaluate on Cartan generators as simple coordinates.
  for (const auto& r : R->roots())
    for (int i = 0; i < 2; ++i)
      CHECK(R->eval_on_h(R->root_weight(r), i) == Rat(R->eval_root_on_h(r, i)));
}
