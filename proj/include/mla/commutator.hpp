#pragma once

#include <stdexcept>
#include <vector>

#include "mla/enveloping.hpp"

namespace mla {

// Witness data for the nonvanishing commutator check on a non-constant
// element of U of the minus subalgebra, loop rank >= 2.
//
// case_id 1: the top component involves a root-vector generator; the witness
// is a Cartan element h_o with beta(h_o) != 0 for the pivot's root beta.
// case_id 2: the top component lies in U of the loop Cartan; the pivot is
// h_i (X) t^n and the witness is e_{beta_i} for the i-th simple root, which
// kills every other Cartan direction (the Cartan basis is dual to the
// simple roots).
struct WitnessCertificate {
  int case_id = 0;
  PbwMonomial top_monomial;  // greedily selected monomial of the top component
  Rat top_coeff;             // its coefficient
  LoopGen pivot;             // generator whose factor receives the shift
  int pivot_exponent = 0;
  Chev witness;
  long p0 = 0;       // shifts r >= p0 avoid all exponent collisions
  Rat predicted;     // coefficient of the target monomial, independent of r
  int degree = 0;    // filtration degree of the analyzed element
};

// Thrown by verify when a computed commutator contradicts the certificate.
struct CertificateFalsified : std::runtime_error {
  using std::runtime_error::runtime_error;
};

WitnessCertificate analyze(const PbwContext& U, const PbwElement& z);

// Shift floor 1 + 2 * max |t_{k-1} exponent| over all factors of z.
long shift_floor(const PbwElement& z);

// The monomial whose coefficient verify inspects: the selected monomial with
// one pivot factor replaced by the pivot shifted r steps along t_{k-1}.
PbwMonomial certificate_target(const WitnessCertificate& c, int r, int k);
LoopGen certificate_witness_gen(const WitnessCertificate& c, int r, int k);

struct VerifyCase {
  int r = 0;
  bool nonzero = false;
  Rat target_coeff;
};

struct VerifyReport {
  bool ok = false;
  Rat predicted;
  std::vector<VerifyCase> cases;
};

// Computes [witness (X) t_{k-1}^r, z] exactly in U for each r in
// [r_lo, r_hi], asserting the commutator is nonzero and the coefficient of
// the target monomial equals the prediction. Throws CertificateFalsified on
// any violation.
VerifyReport verify(const PbwContext& U, const PbwElement& z, const WitnessCertificate& c,
                    int r_lo, int r_hi);

}  // namespace mla
