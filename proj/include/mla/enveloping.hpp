#pragma once

#include <map>
#include <vector>

#include "mla/loop_algebra.hpp"

namespace mla {

// Normal-ordered monomial: strictly increasing generators with positive
// exponents. Empty monomial is the unit.
struct PbwMonomial {
  std::vector<std::pair<LoopGen, int>> factors;
  auto operator<=>(const PbwMonomial&) const = default;
  int degree() const {
    int d = 0;
    for (const auto& [g, e] : factors) d += e;
    return d;
  }
  bool is_unit() const { return factors.empty(); }
  // Total negative-side degree along one exponent axis.
  int axis_degree(int axis) const {
    int d = 0;
    for (const auto& [g, e] : factors) d += e * gen_degree(g, axis);
    return d;
  }
  std::vector<LoopGen> word() const;
};

PbwMonomial monomial_from_word_sorted(std::vector<LoopGen> w);

// Element of U of the lower loop subalgebra, in the PBW basis.
class PbwElement {
 public:
  PbwElement() = default;
  PbwElement(RootSystemPtr R, int k) : R_(std::move(R)), k_(k) {}

  const RootSystemPtr& algebra() const { return R_; }
  int loop_rank() const { return k_; }
  const std::map<PbwMonomial, Rat>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  // Filtration degree; -1 for the zero element.
  int degree() const;

  void add(const PbwMonomial& m, const Rat& c);
  PbwElement& operator+=(const PbwElement& o);
  PbwElement& operator-=(const PbwElement& o);
  PbwElement& operator*=(const Rat& s);

  Rat coefficient(const PbwMonomial& m) const;

 private:
  RootSystemPtr R_;
  int k_ = 0;
  std::map<PbwMonomial, Rat> terms_;
};

PbwElement operator+(PbwElement a, const PbwElement& b);
PbwElement operator-(PbwElement a, const PbwElement& b);
PbwElement operator*(const Rat& s, PbwElement a);

// Rewriting context for U of the minus subalgebra (every generator has
// negative last exponent, so brackets of generators never produce central
// terms and the subalgebra is closed). Instances are cheap value objects;
// parallel sweeps hand each worker its own copy.
class PbwContext {
 public:
  PbwContext(RootSystemPtr R, int k) : R_(std::move(R)), k_(k) {}

  const RootSystemPtr& algebra() const { return R_; }
  int loop_rank() const { return k_; }

  PbwElement zero() const { return PbwElement(R_, k_); }
  PbwElement unit() const;
  PbwElement from_gen(const LoopGen& g) const;
  PbwElement from_monomial(const PbwMonomial& m, const Rat& c = Rat(1)) const;

  // Straightens an arbitrary word of minus generators into the PBW basis by
  // repeatedly resolving the rightmost adjacent inversion.
  PbwElement normal_order(const std::vector<LoopGen>& word, const Rat& coeff = Rat(1)) const;

  PbwElement multiply(const PbwElement& a, const PbwElement& b) const;

  // Adjoint action of a on Z computed exactly in U. Requires every bracket
  // [a, gen] to stay inside the minus subalgebra; loop factors with last
  // exponent 0 and derivations qualify, and centrals act as zero. Throws
  // std::domain_error otherwise.
  PbwElement ad_gen(const LoopGen& a, const PbwElement& z) const;
  PbwElement ad(const LoopElement& a, const PbwElement& z) const;

  // Leibniz replacement in the associated graded algebra: each factor is
  // bracketed in place and the word is re-sorted commutatively, with no
  // lower-degree corrections.
  PbwElement graded_commutator_component(const LoopGen& a, const PbwElement& z) const;

 private:
  RootSystemPtr R_;
  int k_ = 0;
};

// Terms of maximal filtration degree.
PbwElement top_component(const PbwElement& z);

}  // namespace mla
