#include "mla/loop_algebra.hpp"

#include <cassert>

namespace mla {

MultiIndex operator+(const MultiIndex& a, const MultiIndex& b) {
  assert(a.size() == b.size());
  MultiIndex r = a;
  for (int i = 0; i < r.size(); ++i) r.e[i] += b.e[i];
  return r;
}

MultiIndex operator-(const MultiIndex& a) {
  MultiIndex r = a;
  for (auto& x : r.e) x = -x;
  return r;
}

MultiIndex delta_index(int k, int axis, int value) {
  MultiIndex r;
  r.e.assign(k, 0);
  r.e[axis] = value;
  return r;
}

LoopGen loop_gen(Chev x, MultiIndex n) {
  LoopGen g;
  g.kind = LoopGen::Kind::loop;
  g.x = x;
  g.n = std::move(n);
  return g;
}

LoopGen central_gen(int i, int k) {
  assert(i >= 0 && i < k);
  (void)k;
  LoopGen g;
  g.kind = LoopGen::Kind::central;
  g.index = i;
  return g;
}

LoopGen derivation_gen(int i, int k) {
  assert(i >= 0 && i < k);
  (void)k;
  LoopGen g;
  g.kind = LoopGen::Kind::derivation;
  g.index = i;
  return g;
}

void LoopElement::add(const LoopGen& g, const Rat& c) {
  if (mla::is_zero(c)) return;
  if (g.kind == LoopGen::Kind::loop) assert(g.n.size() == k_);
  Rat& slot = terms_[g];
  slot += c;
  if (mla::is_zero(slot)) terms_.erase(g);
}

LoopElement& LoopElement::operator+=(const LoopElement& o) {
  for (const auto& [g, c] : o.terms_) add(g, c);
  return *this;
}

LoopElement& LoopElement::operator-=(const LoopElement& o) {
  for (const auto& [g, c] : o.terms_) add(g, -c);
  return *this;
}

LoopElement& LoopElement::operator*=(const Rat& s) {
  if (mla::is_zero(s)) {
    terms_.clear();
    return *this;
  }
  for (auto& [g, c] : terms_) c *= s;
  return *this;
}

LoopElement operator+(LoopElement a, const LoopElement& b) { return a += b; }
LoopElement operator-(LoopElement a, const LoopElement& b) { return a -= b; }
LoopElement operator*(const Rat& s, LoopElement a) { return a *= s; }

void bracket_gen(const RootSystemData& R, const LoopGen& a, const LoopGen& b,
                 std::vector<std::pair<LoopGen, Rat>>& out) {
  using K = LoopGen::Kind;
  if (a.kind == K::central || b.kind == K::central) return;
  if (a.kind == K::derivation && b.kind == K::derivation) return;
  if (a.kind == K::derivation) {
    // [d_i, x t^n] = n_i x t^n
    if (b.n.e[a.index] != 0) out.push_back({b, Rat(b.n.e[a.index])});
    return;
  }
  if (b.kind == K::derivation) {
    if (a.n.e[b.index] != 0) out.push_back({a, Rat(-a.n.e[b.index])});
    return;
  }
  assert(a.n.size() == b.n.size());
  MultiIndex nm = a.n + b.n;
  for (const auto& [z, c] : R.bracket(a.x, b.x))
    out.push_back({loop_gen(z, nm), c});
  if (nm.is_zero()) {
    Rat f = R.form(a.x, b.x);
    if (!is_zero(f))
      for (int i = 0; i < a.n.size(); ++i)
        if (a.n.e[i] != 0) out.push_back({central_gen(i, a.n.size()), Rat(a.n.e[i]) * f});
  }
}

LoopElement bracket(const LoopElement& a, const LoopElement& b) {
  assert(a.algebra() == b.algebra() && a.loop_rank() == b.loop_rank());
  LoopElement out(a.algebra(), a.loop_rank());
  std::vector<std::pair<LoopGen, Rat>> buf;
  for (const auto& [ga, ca] : a.terms())
    for (const auto& [gb, cb] : b.terms()) {
      buf.clear();
      bracket_gen(*a.algebra(), ga, gb, buf);
      for (const auto& [g, c] : buf) out.add(g, c * ca * cb);
    }
  return out;
}

Rat loop_form(const LoopElement& a, const LoopElement& b) {
  using K = LoopGen::Kind;
  Rat out(0);
  for (const auto& [ga, ca] : a.terms())
    for (const auto& [gb, cb] : b.terms()) {
      if (ga.kind == K::loop && gb.kind == K::loop) {
        if ((ga.n + gb.n).is_zero()) out += ca * cb * a.algebra()->form(ga.x, gb.x);
      } else if (ga.kind != gb.kind && ga.kind != K::loop && gb.kind != K::loop) {
        if (ga.index == gb.index) out += ca * cb;
      }
    }
  return out;
}

bool gen_in_minus(const LoopGen& g) {
  return g.kind == LoopGen::Kind::loop && g.n.last() < 0;
}

bool subalgebra_member(const LoopElement& a, SubalgebraKind s) {
  using K = LoopGen::Kind;
  for (const auto& [g, c] : a.terms()) {
    (void)c;
    switch (s) {
      case SubalgebraKind::plus:
        if (g.kind != K::loop || g.n.last() <= 0) return false;
        break;
      case SubalgebraKind::minus:
        if (!gen_in_minus(g)) return false;
        break;
      case SubalgebraKind::tilde:
        if (g.kind == K::derivation) return false;
        break;
      case SubalgebraKind::hat:
        break;
    }
  }
  return true;
}

int gen_degree(const LoopGen& g, int axis) {
  return g.kind == LoopGen::Kind::loop ? g.n.e[axis] : 0;
}

Rat AlgebraConfig::level(int i) const {
  Rat v(-R->dual_coxeter());
  Rat pw(1);
  for (int j = 0; j <= i; ++j) pw *= Rat(p);
  return v - pw;
}

}  // namespace mla
