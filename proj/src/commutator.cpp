#include "mla/commutator.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <set>

namespace mla {

namespace {

int exponent_of(const PbwMonomial& m, const LoopGen& g) {
  for (const auto& [gen, e] : m.factors)
    if (gen == g) return e;
  return 0;
}

}  // namespace

long shift_floor(const PbwElement& z) {
  const int k = z.loop_rank();
  assert(k >= 2);
  long mx = 0;
  for (const auto& [m, c] : z.terms()) {
    (void)c;
    for (const auto& [g, e] : m.factors) {
      (void)e;
      long a = std::abs((long)g.n.e[k - 2]);
      mx = std::max(mx, a);
    }
  }
  return 1 + 2 * mx;
}

WitnessCertificate analyze(const PbwContext& U, const PbwElement& z) {
  const auto& R = *U.algebra();
  const int k = U.loop_rank();
  if (k < 2) throw std::domain_error("loop rank must be at least 2");
  if (z.degree() < 1) throw std::domain_error("constant element has no witness");

  PbwElement z0 = top_component(z);

  // Generator universe of the top component, in PBW order: Cartan-type loop
  // generators first, then root vectors.
  std::set<LoopGen> genset;
  for (const auto& [m, c] : z0.terms()) {
    (void)c;
    for (const auto& [g, e] : m.factors) {
      (void)e;
      if (g.kind != LoopGen::Kind::loop || !gen_in_minus(g))
        throw std::domain_error("element not supported in the minus subalgebra");
      genset.insert(g);
    }
  }
  std::vector<LoopGen> gens(genset.begin(), genset.end());
  const int n = (int)gens.size();
  int m = 0;
  while (m < n && R.is_cartan(gens[m].x)) ++m;

  std::vector<const PbwMonomial*> pool;
  for (const auto& [mon, c] : z0.terms()) {
    (void)c;
    pool.push_back(&mon);
  }

  auto filter_max = [&](std::vector<const PbwMonomial*>& s, int j) {
    int best = -1;
    for (const auto* mon : s) best = std::max(best, exponent_of(*mon, gens[j]));
    std::vector<const PbwMonomial*> out;
    for (const auto* mon : s)
      if (exponent_of(*mon, gens[j]) == best) out.push_back(mon);
    s = std::move(out);
    return best;
  };

  WitnessCertificate cert;
  std::vector<int> dbar(n, 0);
  int kbar = -1;

  if (m < n) {
    // Case I: a root-vector generator occurs. Maximize its smallest root
    // generator exponent, pin the Cartan exponents (deterministic
    // lexicographically largest admissible tuple; the proof allows any),
    // then maximize the remaining root exponents left to right.
    cert.case_id = 1;
    dbar[m] = filter_max(pool, m);
    const PbwMonomial* best = nullptr;
    std::vector<int> bestkey;
    for (const auto* mon : pool) {
      std::vector<int> key(m);
      for (int j = 0; j < m; ++j) key[j] = exponent_of(*mon, gens[j]);
      if (!best || key > bestkey) {
        best = mon;
        bestkey = key;
      }
    }
    for (int j = 0; j < m; ++j) dbar[j] = bestkey[j];
    {
      std::vector<const PbwMonomial*> out;
      for (const auto* mon : pool) {
        bool ok = true;
        for (int j = 0; j < m && ok; ++j) ok = exponent_of(*mon, gens[j]) == dbar[j];
        if (ok) out.push_back(mon);
      }
      pool = std::move(out);
    }
    for (int j = m + 1; j < n; ++j) dbar[j] = filter_max(pool, j);
    for (int j = n - 1; j >= m; --j)
      if (dbar[j] != 0) {
        kbar = j;
        break;
      }
    assert(kbar >= m);  // the first root generator occurs in the top part
    const Root& beta = R.root_of(gens[kbar].x);
    int widx = -1;
    for (int i = 0; i < R.rank(); ++i)
      if (R.eval_root_on_h(beta, i) != 0) {
        widx = i;
        break;
      }
    assert(widx >= 0);
    cert.witness = R.cartan(widx);
    cert.predicted = Rat(dbar[kbar]) * Rat(R.eval_root_on_h(beta, widx));
  } else {
    // Case II: everything is Cartan-type; plain greedy maximization.
    cert.case_id = 2;
    for (int j = 0; j < n; ++j) dbar[j] = filter_max(pool, j);
    for (int j = n - 1; j >= 0; --j)
      if (dbar[j] != 0) {
        kbar = j;
        break;
      }
    assert(kbar >= 0);
    int i = R.cartan_index(gens[kbar].x);
    cert.witness = R.root_vector(R.simple_root(i));
    cert.predicted = Rat(-dbar[kbar]);
  }

  assert(pool.size() == 1);
  cert.top_monomial = *pool.front();
  cert.top_coeff = z0.coefficient(cert.top_monomial);
  cert.predicted *= cert.top_coeff;
  cert.pivot = gens[kbar];
  cert.pivot_exponent = dbar[kbar];
  cert.degree = z.degree();
  cert.p0 = shift_floor(z);
  return cert;
}

PbwMonomial certificate_target(const WitnessCertificate& c, int r, int k) {
  // One pivot factor is consumed; the fresh factor keeps the pivot's
  // exponents shifted along t_{k-1} and carries the pivot's root vector in
  // Case I but the witness root vector in Case II.
  LoopGen shifted = c.pivot;
  if (c.case_id == 2) shifted.x = c.witness;
  shifted.n.e[k - 2] += r;
  PbwMonomial t;
  bool inserted = false;
  auto put = [&](const LoopGen& g, int e) {
    if (e <= 0) return;
    if (!t.factors.empty() && t.factors.back().first == g)
      t.factors.back().second += e;
    else
      t.factors.push_back({g, e});
  };
  for (const auto& [g, e] : c.top_monomial.factors) {
    int keep = (g == c.pivot) ? e - 1 : e;
    if (!inserted && shifted < g) {
      put(shifted, 1);
      inserted = true;
    }
    put(g, keep);
  }
  if (!inserted) put(shifted, 1);
  return t;
}

LoopGen certificate_witness_gen(const WitnessCertificate& c, int r, int k) {
  return loop_gen(c.witness, delta_index(k, k - 2, r));
}

VerifyReport verify(const PbwContext& U, const PbwElement& z, const WitnessCertificate& c,
                    int r_lo, int r_hi) {
  if (r_lo < c.p0 || r_hi < r_lo)
    throw std::invalid_argument("verification window must lie above the shift floor");
  const int k = U.loop_rank();
  VerifyReport rep;
  rep.predicted = c.predicted;
  for (int r = r_lo; r <= r_hi; ++r) {
    PbwElement com = U.ad_gen(certificate_witness_gen(c, r, k), z);
    VerifyCase vc;
    vc.r = r;
    vc.nonzero = !com.is_zero();
    if (!vc.nonzero)
      throw CertificateFalsified("commutator vanished at shift " + std::to_string(r));
    vc.target_coeff = com.coefficient(certificate_target(c, r, k));
    if (vc.target_coeff != c.predicted)
      throw CertificateFalsified("target coefficient mismatch at shift " + std::to_string(r));
    rep.cases.push_back(vc);
  }
  rep.ok = true;
  return rep;
}

}  // namespace mla
