#pragma once

#include <compare>
#include <map>
#include <stdexcept>
#include <vector>

#include "mla/root_system.hpp"

namespace mla {

// Laurent multi-exponent (n_1, ..., n_k).
struct MultiIndex {
  std::vector<int> e;
  auto operator<=>(const MultiIndex&) const = default;
  int size() const { return (int)e.size(); }
  int last() const { return e.back(); }
  bool is_zero() const {
    for (int x : e)
      if (x) return false;
    return true;
  }
};

MultiIndex operator+(const MultiIndex& a, const MultiIndex& b);
MultiIndex operator-(const MultiIndex& a);
MultiIndex delta_index(int k, int axis, int value);  // value at one axis, 0 elsewhere

// Basis generator of the extended multi-loop algebra: loop elements
// x (X) t^n, central generators c_i, degree derivations d_i (i is 1-based in
// reports and JSON, 0-based here). Default comparison gives loops < centrals
// < derivations with loops ordered by (x, n); that ordering is also the
// PBW generator order.
struct LoopGen {
  enum class Kind { loop = 0, central = 1, derivation = 2 };
  Kind kind = Kind::loop;
  Chev x{};
  MultiIndex n{};
  int index = 0;  // central/derivation axis, 0-based
  auto operator<=>(const LoopGen&) const = default;
};

LoopGen loop_gen(Chev x, MultiIndex n);
LoopGen central_gen(int i, int k);
LoopGen derivation_gen(int i, int k);

// Finite linear combination of generators with fixed algebra and loop rank.
class LoopElement {
 public:
  LoopElement() = default;
  LoopElement(RootSystemPtr R, int k) : R_(std::move(R)), k_(k) {}

  const RootSystemPtr& algebra() const { return R_; }
  int loop_rank() const { return k_; }
  const std::map<LoopGen, Rat>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add(const LoopGen& g, const Rat& c);
  LoopElement& operator+=(const LoopElement& o);
  LoopElement& operator-=(const LoopElement& o);
  LoopElement& operator*=(const Rat& s);

 private:
  RootSystemPtr R_;
  int k_ = 0;
  std::map<LoopGen, Rat> terms_;
};

LoopElement operator+(LoopElement a, const LoopElement& b);
LoopElement operator-(LoopElement a, const LoopElement& b);
LoopElement operator*(const Rat& s, LoopElement a);

// Structure constants on generators. Appends (gen, coeff) pairs to out.
void bracket_gen(const RootSystemData& R, const LoopGen& a, const LoopGen& b,
                 std::vector<std::pair<LoopGen, Rat>>& out);

LoopElement bracket(const LoopElement& a, const LoopElement& b);

// Invariant pairing extended from g: <x t^n, y t^m> = <x,y> delta_{n+m,0};
// centrals and derivations pair dually (<c_i, d_j> = delta_ij).
Rat loop_form(const LoopElement& a, const LoopElement& b);

enum class SubalgebraKind { plus, minus, tilde, hat };

// Membership is per spec: plus/minus constrain the sign of the last exponent
// and forbid centrals/derivations, tilde forbids derivations only.
bool subalgebra_member(const LoopElement& a, SubalgebraKind s);
bool gen_in_minus(const LoopGen& g);

// Negative-side degree of a generator along axis i (0-based).
int gen_degree(const LoopGen& g, int axis);

struct AlgebraConfig {
  RootSystemPtr R;
  int k = 1;
  long p = 2;
  // Level scalar of c_{i+1} in the bounded modules built here: -p^{i+1} - h.
  Rat level(int i) const;
};

}  // namespace mla
