#include "mla/grothendieck.hpp"

#include <algorithm>

namespace mla {

namespace {

std::string wstr(const Weight& w) {
  std::string s = "(";
  for (size_t i = 0; i < w.c.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(w.c[i]);
  }
  return s + ")";
}

Weight zero_weight(int rank) { return Weight{std::vector<int>(rank, 0)}; }

void require_dominant(const Weight& lam, const char* where) {
  if (!lam.is_dominant())
    throw std::invalid_argument(std::string(where) + ": weight " + wstr(lam) +
                                " is not dominant");
}

void gv_axpy(GrothendieckVector& acc, const GrothendieckVector& v, long c) {
  if (c == 0) return;
  for (const auto& [w, a] : v) {
    long& slot = acc[w];
    slot += c * a;
    if (slot == 0) acc.erase(w);
  }
}

// height functional, strictly positive on nonzero sums of positive roots
Rat height_of(const RootSystemData& R, const Weight& w) {
  Rat h(0);
  for (const Rat& c : R.simple_coords(w)) h += c;
  return h;
}

}  // namespace

bool is_restricted(const Weight& lam, long p) {
  require_dominant(lam, "is_restricted");
  for (int c : lam.c)
    if (c >= p) return false;
  return true;
}

std::vector<Weight> p_adic_expansion(const Weight& lam, long p) {
  require_dominant(lam, "p_adic_expansion");
  if (p < 2) throw std::invalid_argument("p_adic_expansion: p < 2");
  std::vector<Weight> digits;
  std::vector<long> rem(lam.c.begin(), lam.c.end());
  bool nonzero = true;
  while (nonzero) {
    nonzero = false;
    Weight d = zero_weight((int)rem.size());
    for (size_t i = 0; i < rem.size(); ++i) {
      d.c[i] = (int)(rem[i] % p);
      rem[i] /= p;
      if (rem[i]) nonzero = true;
    }
    digits.push_back(d);
  }
  return digits;
}

PMatrix PMatrix::identity(RootSystemPtr R, long p) {
  PMatrix m(std::move(R), p);
  m.identity_ = true;
  return m;
}

void PMatrix::set(const Weight& mu, const Weight& lam, long value) {
  if (identity_) throw std::logic_error("PMatrix: identity matrices are fixed");
  if (value == 0)
    entries_.erase({mu, lam});
  else
    entries_[{mu, lam}] = value;
}

void PMatrix::set_complete_box(const Weight& lo, const Weight& hi) {
  has_box_ = true;
  lo_ = lo;
  hi_ = hi;
}

bool PMatrix::in_box(const Weight& w) const {
  if (!has_box_) return false;
  for (size_t i = 0; i < w.c.size(); ++i)
    if (w.c[i] < lo_.c[i] || w.c[i] > hi_.c[i]) return false;
  return true;
}

long PMatrix::value(const Weight& mu, const Weight& lam) const {
  if (identity_) return mu == lam ? 1 : 0;
  auto it = entries_.find({mu, lam});
  if (it != entries_.end()) return it->second;
  if (in_box(mu) && in_box(lam)) return 0;
  throw data_gap("matrix entry " + wstr(mu) + "," + wstr(lam) +
                 " is outside the declared complete region");
}

std::vector<std::pair<Weight, long>> PMatrix::column(const Weight& lam) const {
  if (identity_) return {{lam, 1}};
  if (has_box_ && !in_box(lam))
    throw data_gap("column " + wstr(lam) + " is outside the declared complete region");
  std::vector<std::pair<Weight, long>> out;
  for (const auto& [key, v] : entries_)
    if (key.second == lam) out.emplace_back(key.first, v);
  return out;  // entries_ is ordered, so rows come out sorted
}

std::vector<std::string> PMatrix::validate() const {
  std::vector<std::string> warnings;
  if (identity_) return warnings;
  std::map<Weight, bool> columns;
  for (const auto& [key, v] : entries_) {
    const auto& [mu, lam] = key;
    columns[lam] = true;
    if (mu == lam && v != 1)
      warnings.push_back("diagonal entry at " + wstr(lam) + " is " +
                         std::to_string(v) + ", expected 1");
    if (mu != lam) {
      // row index should lie below the column in the root order
      std::vector<Rat> diff = R_->simple_coords(lam - mu);
      bool below = true;
      for (const Rat& c : diff)
        if (c < 0 || c.get_den() != 1) below = false;
      if (!below)
        warnings.push_back("entry " + wstr(mu) + "," + wstr(lam) +
                           " sits above its column in the root order");
    }
  }
  for (const auto& [lam, _] : columns)
    if (!identity_ && entries_.find({lam, lam}) == entries_.end() && !in_box(lam))
      warnings.push_back("column " + wstr(lam) + " has no diagonal entry");
  return warnings;
}

GrothendieckVector ek_step(int k, const Weight& lam, const PMatrix& P,
                           const std::function<GrothendieckVector(const Weight&)>& expand_prev) {
  require_dominant(lam, "ek_step");
  if (k < 1) throw std::invalid_argument("ek_step: k < 1");
  std::vector<Weight> digits = p_adic_expansion(lam, P.p());
  Weight sigma = zero_weight((int)lam.c.size());
  long q = 1;
  for (int r = 0; r + 1 < k; ++r) {
    if (r < (int)digits.size()) sigma = sigma + (int)q * digits[r];
    q *= P.p();
  }
  Weight col = lam - sigma;
  for (int& c : col.c) c = (int)(c / q);

  GrothendieckVector out;
  for (const auto& [nu, val] : P.column(col)) {
    Weight mu = sigma;
    for (size_t i = 0; i < mu.c.size(); ++i) mu.c[i] += (int)(q * nu.c[i]);
    if (!mu.is_dominant()) continue;  // the sum runs over dominant indices
    gv_axpy(out, expand_prev(mu), val);
  }
  return out;
}

GrothendieckVector ek_vector(int k, const Weight& lam, const PMatrix& P) {
  require_dominant(lam, "ek_vector");
  if (k == 0) return {{lam, 1}};
  return ek_step(k, lam, P,
                 [&](const Weight& mu) { return ek_vector(k - 1, mu, P); });
}

StabilizeResult stabilize(const Weight& lam, const PMatrix& P, int k_max) {
  StabilizeResult r;
  if (k_max < 1) return r;
  GrothendieckVector prev = ek_vector(1, lam, P);
  for (int k = 1; k <= k_max; ++k) {
    GrothendieckVector next = ek_vector(k + 1, lam, P);
    if (next == prev) {
      r.value = std::move(prev);
      r.k_stable = k;
      return r;
    }
    prev = std::move(next);
  }
  r.value = std::move(prev);
  return r;
}

CharacterPolynomial weyl_character(const RootSystemData& R, const Weight& lam) {
  require_dominant(lam, "weyl_character");
  Weight rho = R.rho();
  CharacterPolynomial num, den;
  for (const WeylElement& w : R.weyl_group()) {
    num[R.weyl_act(w, lam + rho)] += w.sign;
    den[R.weyl_act(w, rho)] += w.sign;
  }
  for (auto it = num.begin(); it != num.end();)
    it = it->second == 0 ? num.erase(it) : std::next(it);
  for (auto it = den.begin(); it != den.end();)
    it = it->second == 0 ? den.erase(it) : std::next(it);

  // exact division in the group ring, leading terms by (height, lex)
  auto leading = [&](const CharacterPolynomial& f) {
    auto best = f.begin();
    Rat best_h = height_of(R, best->first);
    for (auto it = std::next(f.begin()); it != f.end(); ++it) {
      Rat h = height_of(R, it->first);
      if (h > best_h || (h == best_h && it->first > best->first)) {
        best = it;
        best_h = h;
      }
    }
    return best;
  };

  CharacterPolynomial quotient;
  long guard = 0;
  while (!num.empty()) {
    if (++guard > 2000000) throw std::logic_error("weyl_character: division stalled");
    auto lead = leading(num);
    Weight q = lead->first - rho;  // denominator leads at e^rho
    long c = lead->second;
    quotient[q] += c;
    for (const auto& [t, s] : den) {
      Weight key = q + t;
      long& slot = num[key];
      slot -= c * s;
      if (slot == 0) num.erase(key);
    }
  }
  return quotient;
}

CharacterPolynomial character_of(const RootSystemData& R, const GrothendieckVector& v) {
  CharacterPolynomial out;
  for (const auto& [lam, c] : v) {
    for (const auto& [w, m] : weyl_character(R, lam)) {
      long& slot = out[w];
      slot += c * m;
      if (slot == 0) out.erase(w);
    }
  }
  return out;
}

long character_dim(const CharacterPolynomial& ch) {
  long d = 0;
  for (const auto& [w, m] : ch) d += m;
  return d;
}

}  // namespace mla
