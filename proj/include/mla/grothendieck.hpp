#pragma once

#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "mla/root_system.hpp"

namespace mla {

// thrown when a computation needs matrix data outside the region the
// input declared complete; missing data is never silently zero
struct data_gap : std::runtime_error {
  explicit data_gap(const std::string& what) : std::runtime_error(what) {}
};

// integer vector in the Grothendieck group, indexed by dominant weights
using GrothendieckVector = std::map<Weight, long>;

// formal character: weight-lattice point -> multiplicity
using CharacterPolynomial = std::map<Weight, long>;

// every fundamental coordinate below p
bool is_restricted(const Weight& lam, long p);

// base-p digits of a dominant weight, coordinatewise: lam = sum p^r lam_r
// with every digit restricted; at least one digit, no trailing zeros
std::vector<Weight> p_adic_expansion(const Weight& lam, long p);

// sparse integer change-of-basis matrix indexed by pairs of dominant
// weights, with an optional box (inclusive bounds on fundamental
// coordinates) inside which the data is declared complete: a missing
// entry inside the box is zero, anything touching the outside is a
// data_gap. Without a box only listed entries are known.
class PMatrix {
 public:
  PMatrix(RootSystemPtr R, long p) : R_(std::move(R)), p_(p) {}
  static PMatrix identity(RootSystemPtr R, long p);

  const RootSystemPtr& algebra() const { return R_; }
  long p() const { return p_; }
  bool is_identity() const { return identity_; }

  void set(const Weight& mu, const Weight& lam, long value);
  void set_complete_box(const Weight& lo, const Weight& hi);
  bool has_box() const { return has_box_; }
  const Weight& box_lo() const { return lo_; }
  const Weight& box_hi() const { return hi_; }
  bool in_box(const Weight& w) const;

  long value(const Weight& mu, const Weight& lam) const;
  // all known nonzero entries of one column, sorted by row index; the
  // column index must lie in the complete box when one is declared
  std::vector<std::pair<Weight, long>> column(const Weight& lam) const;
  const std::map<std::pair<Weight, Weight>, long>& entries() const { return entries_; }

  // shape diagnostics, warn-only: unit diagonal and row <= column in the
  // root order wherever that is checkable
  std::vector<std::string> validate() const;

 private:
  RootSystemPtr R_;
  long p_ = 2;
  bool identity_ = false;
  std::map<std::pair<Weight, Weight>, long> entries_;
  bool has_box_ = false;
  Weight lo_, hi_;
};

// one step of the change-of-basis recursion: with digits lam = sum p^r
// lam_r and prefix sigma = lam_0 + ... + p^{k-2} lam_{k-2},
//   E^k_lam = sum over known rows nu of column (lam - sigma)/p^{k-1}
//             of P_{nu, .} * E^{k-1}_{sigma + p^{k-1} nu},
// restricted to dominant summation indices. k >= 1; k = 1 is the plain
// change of basis E^1 = P E^0.
GrothendieckVector ek_step(int k, const Weight& lam, const PMatrix& P,
                           const std::function<GrothendieckVector(const Weight&)>& expand_prev);

// E^k_lam fully expanded in the E^0 basis (recursion down to k = 0)
GrothendieckVector ek_vector(int k, const Weight& lam, const PMatrix& P);

struct StabilizeResult {
  GrothendieckVector value;  // E^{k_stable}, or the last computed vector
  int k_stable = -1;         // -1: no two consecutive vectors agreed
};

// smallest k in [1, k_max] with E^k = E^{k+1}
StabilizeResult stabilize(const Weight& lam, const PMatrix& P, int k_max);

// character of V(lam) by the alternating Weyl sum with exact division by
// the denominator
CharacterPolynomial weyl_character(const RootSystemData& R, const Weight& lam);

// linear extension of weyl_character over a Grothendieck vector
CharacterPolynomial character_of(const RootSystemData& R, const GrothendieckVector& v);

// total dimension: sum of all multiplicities
long character_dim(const CharacterPolynomial& ch);

}  // namespace mla
