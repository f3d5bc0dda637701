#include "mla/enveloping.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace mla {

std::vector<LoopGen> PbwMonomial::word() const {
  std::vector<LoopGen> w;
  for (const auto& [g, e] : factors)
    for (int i = 0; i < e; ++i) w.push_back(g);
  return w;
}

PbwMonomial monomial_from_word_sorted(std::vector<LoopGen> w) {
  assert(std::is_sorted(w.begin(), w.end()));
  PbwMonomial m;
  for (const auto& g : w) {
    if (!m.factors.empty() && m.factors.back().first == g)
      ++m.factors.back().second;
    else
      m.factors.push_back({g, 1});
  }
  return m;
}

int PbwElement::degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
  return d;
}

void PbwElement::add(const PbwMonomial& m, const Rat& c) {
  if (mla::is_zero(c)) return;
  Rat& slot = terms_[m];
  slot += c;
  if (mla::is_zero(slot)) terms_.erase(m);
}

PbwElement& PbwElement::operator+=(const PbwElement& o) {
  for (const auto& [m, c] : o.terms_) add(m, c);
  return *this;
}

PbwElement& PbwElement::operator-=(const PbwElement& o) {
  for (const auto& [m, c] : o.terms_) add(m, -c);
  return *this;
}

PbwElement& PbwElement::operator*=(const Rat& s) {
  if (mla::is_zero(s)) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, c] : terms_) c *= s;
  return *this;
}

Rat PbwElement::coefficient(const PbwMonomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rat(0) : it->second;
}

PbwElement operator+(PbwElement a, const PbwElement& b) { return a += b; }
PbwElement operator-(PbwElement a, const PbwElement& b) { return a -= b; }
PbwElement operator*(const Rat& s, PbwElement a) { return a *= s; }

PbwElement PbwContext::unit() const {
  PbwElement e(R_, k_);
  e.add(PbwMonomial{}, Rat(1));
  return e;
}

PbwElement PbwContext::from_gen(const LoopGen& g) const {
  if (!gen_in_minus(g)) throw std::domain_error("generator outside the minus subalgebra");
  PbwElement e(R_, k_);
  PbwMonomial m;
  m.factors = {{g, 1}};
  e.add(m, Rat(1));
  return e;
}

PbwElement PbwContext::from_monomial(const PbwMonomial& m, const Rat& c) const {
  for (const auto& [g, e] : m.factors) {
    if (!gen_in_minus(g) || e <= 0)
      throw std::domain_error("malformed PBW monomial");
  }
  assert(std::is_sorted(m.factors.begin(), m.factors.end()) &&
         std::adjacent_find(m.factors.begin(), m.factors.end(),
                            [](auto& a, auto& b) { return a.first == b.first; }) ==
             m.factors.end());
  PbwElement e(R_, k_);
  e.add(m, c);
  return e;
}

PbwElement PbwContext::normal_order(const std::vector<LoopGen>& word, const Rat& coeff) const {
  PbwElement out(R_, k_);
  std::vector<std::pair<std::vector<LoopGen>, Rat>> work;
  work.push_back({word, coeff});
  std::vector<std::pair<LoopGen, Rat>> buf;
  while (!work.empty()) {
    auto [w, c] = std::move(work.back());
    work.pop_back();
    int inv = -1;
    for (int i = (int)w.size() - 2; i >= 0; --i)
      if (w[i + 1] < w[i]) {
        inv = i;
        break;
      }
    if (inv < 0) {
      out.add(monomial_from_word_sorted(std::move(w)), c);
      continue;
    }
    buf.clear();
    bracket_gen(*R_, w[inv], w[inv + 1], buf);
    std::swap(w[inv], w[inv + 1]);
    for (const auto& [z, zc] : buf) {
      // Two minus generators bracket to a minus generator; central terms
      // would need exponents summing to zero, impossible here.
      if (!gen_in_minus(z)) throw std::domain_error("bracket left the minus subalgebra");
      std::vector<LoopGen> shorter;
      shorter.reserve(w.size() - 1);
      shorter.insert(shorter.end(), w.begin(), w.begin() + inv);
      shorter.push_back(z);
      shorter.insert(shorter.end(), w.begin() + inv + 2, w.end());
      work.push_back({std::move(shorter), c * zc});
    }
    work.push_back({std::move(w), c});
  }
  return out;
}

PbwElement PbwContext::multiply(const PbwElement& a, const PbwElement& b) const {
  PbwElement out(R_, k_);
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms()) {
      std::vector<LoopGen> w = ma.word();
      std::vector<LoopGen> wb = mb.word();
      w.insert(w.end(), wb.begin(), wb.end());
      out += normal_order(w, ca * cb);
    }
  return out;
}

PbwElement PbwContext::ad_gen(const LoopGen& a, const PbwElement& z) const {
  PbwElement out(R_, k_);
  std::vector<std::pair<LoopGen, Rat>> buf;
  for (const auto& [m, c] : z.terms()) {
    std::vector<LoopGen> w = m.word();
    for (std::size_t i = 0; i < w.size(); ++i) {
      buf.clear();
      bracket_gen(*R_, a, w[i], buf);
      for (const auto& [g, gc] : buf) {
        if (!gen_in_minus(g))
          throw std::domain_error("adjoint action leaves the minus subalgebra");
        std::vector<LoopGen> w2 = w;
        w2[i] = g;
        out += normal_order(w2, c * gc);
      }
    }
  }
  return out;
}

PbwElement PbwContext::ad(const LoopElement& a, const PbwElement& z) const {
  PbwElement out(R_, k_);
  for (const auto& [g, c] : a.terms()) out += c * ad_gen(g, z);
  return out;
}

PbwElement PbwContext::graded_commutator_component(const LoopGen& a, const PbwElement& z) const {
  PbwElement out(R_, k_);
  std::vector<std::pair<LoopGen, Rat>> buf;
  for (const auto& [m, c] : z.terms()) {
    std::vector<LoopGen> w = m.word();
    for (std::size_t i = 0; i < w.size(); ++i) {
      buf.clear();
      bracket_gen(*R_, a, w[i], buf);
      for (const auto& [g, gc] : buf) {
        if (!gen_in_minus(g))
          throw std::domain_error("graded bracket leaves the minus subalgebra");
        std::vector<LoopGen> w2 = w;
        w2[i] = g;
        std::sort(w2.begin(), w2.end());
        out.add(monomial_from_word_sorted(std::move(w2)), c * gc);
      }
    }
  }
  return out;
}

PbwElement top_component(const PbwElement& z) {
  PbwElement out(z.algebra(), z.loop_rank());
  int d = z.degree();
  for (const auto& [m, c] : z.terms())
    if (m.degree() == d) out.add(m, c);
  return out;
}

}  // namespace mla
