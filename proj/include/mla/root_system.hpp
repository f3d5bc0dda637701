#pragma once

#include <compare>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "mla/rational.hpp"

namespace mla {

// Integral weight in fundamental-weight coordinates.
struct Weight {
  std::vector<int> c;
  auto operator<=>(const Weight&) const = default;
  bool is_zero() const {
    for (int x : c)
      if (x) return false;
    return true;
  }
  bool is_dominant() const {
    for (int x : c)
      if (x < 0) return false;
    return true;
  }
};

Weight operator+(const Weight& a, const Weight& b);
Weight operator-(const Weight& a, const Weight& b);
Weight operator*(int s, const Weight& a);

// Root in simple-root coordinates (always integral).
struct Root {
  std::vector<int> c;
  auto operator<=>(const Root&) const = default;
  int height() const {
    int h = 0;
    for (int x : c) h += x;
    return h;
  }
};

// Index into the Chevalley basis table of a RootSystemData. Ordering of ids
// is the canonical basis order: Cartan generators h_1..h_r first, then root
// vectors sorted by (root height, then lexicographic simple-root coords).
struct Chev {
  int id = -1;
  auto operator<=>(const Chev&) const = default;
};

// Exact linear combination of Chevalley basis elements.
using GCombo = std::map<Chev, Rat>;

void gc_axpy(GCombo& acc, const GCombo& src, const Rat& scale);
GCombo gc_scale(const GCombo& a, const Rat& s);

// Weyl group element as an integer matrix acting on fundamental coordinates,
// with its determinant sign.
struct WeylElement {
  std::vector<std::vector<int>> mat;
  int sign = 1;
  auto operator<=>(const WeylElement&) const = default;
};

// Finite-dimensional simple Lie algebra with a fixed Chevalley basis and
// normalized invariant form (highest root has squared length 2).
//
// Type A_n is realized inside sl_{n+1}: root vectors are matrix units
// e_{eps_a - eps_b} = E_ab, Cartan generators h_i are the fundamental
// coweights (alpha_j(h_i) = delta_ij as traceless diagonal matrices), and
// the form is the trace form. All structure constants are derived from
// matrix commutators, which pins every sign convention at once.
class RootSystemData {
 public:
  static std::shared_ptr<const RootSystemData> build(char series, int rank_);
  static std::shared_ptr<const RootSystemData> from_name(const std::string&);

  char series() const { return series_; }
  int rank() const { return rank_; }
  int dim() const { return (int)roots_.size() + rank_; }
  int num_roots() const { return (int)roots_.size(); }
  std::string name() const { return std::string(1, series_) + std::to_string(rank_); }

  bool is_cartan(Chev g) const { return g.id < rank_; }
  Chev cartan(int i) const;                 // 0-based
  int cartan_index(Chev g) const;           // 0-based, requires is_cartan
  Chev root_vector(const Root& b) const;
  const Root& root_of(Chev g) const;        // requires !is_cartan
  const std::vector<Root>& roots() const { return roots_; }
  bool has_root(const Root& b) const { return root_ids_.count(b) != 0; }

  const GCombo& bracket(Chev a, Chev b) const;
  GCombo bracket(const GCombo& a, const GCombo& b) const;
  Rat form(Chev a, Chev b) const;
  Rat form(const GCombo& a, const GCombo& b) const;

  // Weight attached to a basis element: its root for root vectors, zero for
  // Cartan generators.
  Weight chev_weight(Chev g) const;
  Weight root_weight(const Root& b) const;  // fundamental coords of a root
  Root simple_root(int i) const;

  // beta(h_i) for a root beta is its i-th simple-root coordinate; for a
  // general weight the evaluation is rational.
  int eval_root_on_h(const Root& b, int i) const { return b.c[i]; }
  Rat eval_on_h(const Weight& w, int i) const;
  std::vector<Rat> simple_coords(const Weight& w) const;

  int cartan_entry(int i, int j) const { return cartan_[i][j]; }
  Rat form_weights(const Weight& a, const Weight& b) const;

  // Pairs (e_j, e^j) with <e_j, e^l> = delta_jl, used by Casimir-type sums.
  const std::vector<std::pair<Chev, GCombo>>& dual_basis() const { return dual_; }

  int dual_coxeter() const { return h_dual_; }
  const Root& highest_root() const { return theta_; }
  Weight rho() const;
  Weight w0_image(const Weight& w) const;   // lowest weight of V(w), w dominant

  const std::vector<WeylElement>& weyl_group() const { return weyl_; }
  Weight weyl_act(const WeylElement& s, const Weight& w) const;

  long weyl_dimension(const Weight& lambda) const;

  // Chevalley anti-involution on basis elements: e_beta <-> e_{-beta},
  // Cartan fixed. The matrix realization makes this the transpose.
  Chev sigma(Chev g) const;

 private:
  RootSystemData() = default;

  char series_ = 'A';
  int rank_ = 0;
  std::vector<Root> roots_;                  // basis order after the Cartans
  std::map<Root, int> root_ids_;             // root -> Chev id
  std::vector<std::vector<int>> cartan_;     // Cartan matrix a_ij
  std::vector<std::vector<Rat>> fund_form_;  // form on weights, fund coords
  std::vector<std::vector<Rat>> fund_to_simple_;
  std::vector<std::vector<GCombo>> bracket_;
  std::vector<std::vector<Rat>> form_;
  std::vector<std::pair<Chev, GCombo>> dual_;
  int h_dual_ = 0;
  Root theta_;
  std::vector<WeylElement> weyl_;
};

using RootSystemPtr = std::shared_ptr<const RootSystemData>;

}  // namespace mla
