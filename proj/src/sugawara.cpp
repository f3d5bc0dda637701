#include "mla/sugawara.hpp"

#include <stdexcept>

namespace mla {

namespace {

// largest integer strictly below n/2
int half_floor_strict(int n) {
  // floor((n - 1) / 2) with floor division
  int m = n - 1;
  return (m >= 0) ? m / 2 : -((-m + 1) / 2);
}

// x t^n applied to a sparse vector
void act_axpy(const TowerModule& M, Chev x, const MultiIndex& n,
              const SparseVec& v, const Rat& scale, SparseVec& out) {
  if (scale == 0) return;
  LoopGen g = loop_gen(x, n);
  for (const auto& [i, c] : v) sv_axpy(out, M.act_gen(g, i), scale * c);
}

void act_combo_axpy(const TowerModule& M, const GCombo& x, const MultiIndex& n,
                    const SparseVec& v, const Rat& scale, SparseVec& out) {
  for (const auto& [g, c] : x) act_axpy(M, g, n, v, scale * c, out);
}

// largest top-axis depth present in v (0 for the zero vector)
int top_depth(const TowerModule& M, const SparseVec& v) {
  int k = M.level();
  int top = M.shifts().at(k - 1);
  int depth = 0;
  for (const auto& [i, c] : v) {
    if (c == 0) continue;
    int d = top - M.d_tuple(i).at(k - 1);
    if (d > depth) depth = d;
  }
  return depth;
}

// one normal ordered mode pair e_j(-d) e^j(d), d >= 1, summed over j
void mode_axpy(const TowerModule& M, int d, const SparseVec& v, const Rat& scale,
               SparseVec& out) {
  const RootSystemData& R = *M.algebra();
  int k = M.level();
  MultiIndex up = delta_index(k, k - 1, d);
  MultiIndex down = delta_index(k, k - 1, -d);
  for (const auto& [ej, dual] : R.dual_basis()) {
    SparseVec w;
    act_combo_axpy(M, dual, up, v, Rat(1), w);
    if (w.empty()) continue;
    act_axpy(M, ej, down, w, scale, out);
  }
}

void zero_mode_axpy(const TowerModule& M, const SparseVec& v, const Rat& scale,
                    SparseVec& out) {
  const RootSystemData& R = *M.algebra();
  MultiIndex zero = delta_index(M.level(), 0, 0);
  for (const auto& [ej, dual] : R.dual_basis()) {
    SparseVec w;
    act_combo_axpy(M, dual, zero, v, Rat(1), w);
    if (w.empty()) continue;
    act_axpy(M, ej, zero, w, scale, out);
  }
}

MultiIndex strip_last(const MultiIndex& n) {
  MultiIndex m = n;
  m.e.back() = 0;
  return m;
}

}  // namespace

Rat casimir_scalar(const RootSystemData& R, const Weight& lambda) {
  Weight shifted = lambda + 2 * R.rho();
  return R.form_weights(lambda, shifted) / 2;
}

SparseVec apply_energy(const TowerModule& m, const SparseVec& v) {
  SparseVec out;
  zero_mode_axpy(m, v, Rat(1, 2), out);
  int D = top_depth(m, v);
  for (int d = 1; d <= D; ++d) mode_axpy(m, d, v, Rat(1), out);
  return out;
}

SparseVec apply_energy_cutoff(const TowerModule& m, const SparseVec& v, int cutoff) {
  if (cutoff < 0) throw std::invalid_argument("apply_energy_cutoff: cutoff < 0");
  SparseVec out;
  zero_mode_axpy(m, v, Rat(1, 2), out);
  int D = std::min(top_depth(m, v), cutoff);
  for (int d = 1; d <= D; ++d) mode_axpy(m, d, v, Rat(1), out);
  return out;
}

SparseVec apply_energy_raw(const TowerModule& m, const SparseVec& v, int cutoff) {
  if (cutoff < 0) throw std::invalid_argument("apply_energy_raw: cutoff < 0");
  const RootSystemData& R = *m.algebra();
  int k = m.level();
  SparseVec out;
  for (int d = -cutoff; d <= cutoff; ++d) {
    MultiIndex up = delta_index(k, k - 1, d);
    MultiIndex down = delta_index(k, k - 1, -d);
    for (const auto& [ej, dual] : R.dual_basis()) {
      SparseVec w;
      act_combo_axpy(m, dual, up, v, Rat(1), w);
      if (w.empty()) continue;
      act_axpy(m, ej, down, w, Rat(1, 2), out);
    }
  }
  return out;
}

SparseVec commutator_lhs(const TowerModule& m, Chev x, const MultiIndex& n,
                         const SparseVec& v) {
  SparseVec out;
  act_axpy(m, x, n, apply_energy(m, v), Rat(1), out);
  SparseVec xv;
  act_axpy(m, x, n, v, Rat(1), xv);
  sv_axpy(out, apply_energy(m, xv), Rat(-1));
  return out;
}

SparseVec commutator_rhs(const TowerModule& m, Chev x, const MultiIndex& n,
                         const SparseVec& v) {
  const RootSystemData& R = *m.algebra();
  int k = m.level();
  if (n.size() != k) throw std::invalid_argument("commutator_rhs: index rank");
  MultiIndex np = strip_last(n);
  if (np.is_zero()) throw std::invalid_argument("commutator_rhs: n' = 0");
  int nk = n.last();

  GCombo gx;
  gx[x] = Rat(1);
  SparseVec out;
  int d_lo = nk - top_depth(m, v);
  int d_hi = half_floor_strict(nk);
  for (const auto& [ej, dual] : R.dual_basis()) {
    GCombo bx = R.bracket(gx, dual);  // [x, e^j]
    for (int d = d_lo; d <= d_hi; ++d) {
      {
        SparseVec w;
        act_combo_axpy(m, bx, delta_index(k, k - 1, nk - d), v, Rat(1), w);
        act_axpy(m, ej, np + delta_index(k, k - 1, d), w, Rat(-1), out);
      }
      {
        SparseVec w;
        act_combo_axpy(m, bx, n + delta_index(k, k - 1, -d), v, Rat(1), w);
        act_axpy(m, ej, delta_index(k, k - 1, d), w, Rat(1), out);
      }
    }
    if (nk % 2 == 0) {
      int h = nk / 2;
      {
        SparseVec w;
        act_combo_axpy(m, bx, delta_index(k, k - 1, h), v, Rat(1), w);
        act_axpy(m, ej, np + delta_index(k, k - 1, h), w, Rat(-1, 2), out);
      }
      {
        SparseVec w;
        act_combo_axpy(m, bx, n + delta_index(k, k - 1, -h), v, Rat(1), w);
        act_axpy(m, ej, delta_index(k, k - 1, h), w, Rat(1, 2), out);
      }
    }
  }
  act_axpy(m, x, n, v, Rat(R.dual_coxeter() * nk), out);
  return out;
}

SparseVec classical_rhs(const TowerModule& m, Chev x, const MultiIndex& n,
                        const SparseVec& v) {
  int k = m.level();
  if (n.size() != k) throw std::invalid_argument("classical_rhs: index rank");
  if (!strip_last(n).is_zero()) throw std::invalid_argument("classical_rhs: n' != 0");
  int nk = n.last();
  Rat scale = nk * (m.config().level(k - 1) + m.algebra()->dual_coxeter());
  SparseVec out;
  act_axpy(m, x, n, v, scale, out);
  return out;
}

SugawaraCase sugawara_case(const TowerModule& m, Chev x, const MultiIndex& n,
                           const SparseVec& v) {
  SugawaraCase r;
  r.classical = strip_last(n).is_zero();
  try {
    r.lhs = commutator_lhs(m, x, n, v);
    r.rhs = r.classical ? classical_rhs(m, x, n, v) : commutator_rhs(m, x, n, v);
  } catch (const box_overflow&) {
    r.overflow = true;
    return r;
  }
  r.ok = (r.lhs == r.rhs);
  return r;
}

}  // namespace mla
