#include "mla/weyl_module.hpp"

#include <algorithm>
#include <stdexcept>

namespace mla {

namespace {

// multiset of negative-root generators, sorted by Chev id
using VMono = std::vector<std::pair<Chev, int>>;
using VElem = std::map<VMono, Rat>;

struct VermaCtx {
  const RootSystemData& R;
  Weight lambda;

  void add(VElem& e, const VMono& m, const Rat& c) const {
    if (mla::is_zero(c)) return;
    auto it = e.find(m);
    if (it == e.end()) {
      e.emplace(m, c);
    } else {
      it->second += c;
      if (mla::is_zero(it->second)) e.erase(it);
    }
  }

  static VMono pop_head(const VMono& m) {
    VMono rest = m;
    if (rest.front().second > 1) {
      rest.front().second -= 1;
    } else {
      rest.erase(rest.begin());
    }
    return rest;
  }

  bool is_lowering(Chev g) const {
    return !R.is_cartan(g) && R.root_of(g).height() < 0;
  }

  // multiply basis monomial m by a lowering generator f on the left
  void left_mul(Chev f, const VMono& m, const Rat& scale, VElem& out) const {
    if (m.empty() || f <= m.front().first) {
      VMono res = m;
      if (!res.empty() && res.front().first == f) {
        res.front().second += 1;
      } else {
        res.insert(res.begin(), {f, 1});
      }
      add(out, res, scale);
      return;
    }
    Chev g0 = m.front().first;
    VMono rest = pop_head(m);
    VElem tmp;
    left_mul(f, rest, scale, tmp);
    for (const auto& [m2, c2] : tmp) left_mul(g0, m2, c2, out);
    for (const auto& [z, c] : R.bracket(f, g0)) {
      // bracket of two lowering vectors stays lowering
      left_mul(z, rest, scale * c, out);
    }
  }

  // exact action of any Chevalley generator on a basis monomial
  void act(Chev g, const VMono& m, const Rat& scale, VElem& out) const {
    if (is_lowering(g)) {
      left_mul(g, m, scale, out);
      return;
    }
    if (m.empty()) {
      if (R.is_cartan(g)) {
        Rat ev = R.eval_on_h(lambda, R.cartan_index(g));
        add(out, m, scale * ev);
      }
      // raising generator kills the highest weight vector
      return;
    }
    Chev g0 = m.front().first;
    VMono rest = pop_head(m);
    for (const auto& [z, c] : R.bracket(g, g0)) act(z, rest, scale * c, out);
    VElem tmp;
    act(g, rest, scale, tmp);
    for (const auto& [m2, c2] : tmp) left_mul(g0, m2, c2, out);
  }

  void act(Chev g, const VElem& e, VElem& out) const {
    for (const auto& [m, c] : e) act(g, m, c, out);
  }

  int drop_height(const VMono& m) const {
    int h = 0;
    for (const auto& [g, mult] : m) h += mult * (-R.root_of(g).height());
    return h;
  }

  Weight weight_of(const VMono& m) const {
    Weight w = lambda;
    for (const auto& [g, mult] : m) w = w + mult * R.chev_weight(g);
    return w;
  }

  // <m1 . v0, m2 . v0> via the anti-involution: apply sigma(m1) to m2 . v0
  // and read off the coefficient of the empty monomial.
  Rat pair(const VMono& m1, const VMono& m2) const {
    VElem cur;
    cur.emplace(m2, Rat(1));
    for (const auto& [g, mult] : m1) {
      Chev e = R.sigma(g);
      for (int t = 0; t < mult; ++t) {
        VElem next;
        act(e, cur, next);
        cur.swap(next);
      }
    }
    auto it = cur.find(VMono{});
    return it == cur.end() ? Rat(0) : it->second;
  }
};

void enumerate_monos(const std::vector<Chev>& gens, const std::vector<int>& cost,
                     size_t gi, int budget, VMono& cur, std::vector<VMono>& out) {
  out.push_back(cur);
  for (size_t i = gi; i < gens.size(); ++i) {
    if (cost[i] > budget) continue;
    cur.push_back({gens[i], 1});
    int used = cost[i];
    while (used <= budget) {
      enumerate_monos(gens, cost, i + 1, budget - used, cur, out);
      cur.back().second += 1;
      used += cost[i];
    }
    cur.pop_back();
  }
}

}  // namespace

WeylModule::WeylModule(RootSystemPtr R, Weight lambda) : R_(std::move(R)), lambda_(lambda) {
  const RootSystemData& rs = *R_;
  if (static_cast<int>(lambda.c.size()) != rs.rank())
    throw std::invalid_argument("highest weight has wrong rank");
  if (!lambda.is_dominant())
    throw std::invalid_argument("highest weight must be dominant");

  VermaCtx ctx{rs, lambda_};

  // weight window: every weight of the module lies within this drop height
  Weight low = rs.w0_image(lambda_);
  Weight diff = lambda_ - low;
  Root diff_sr;
  {
    QVec sc = rs.simple_coords(diff);
    diff_sr.c.resize(sc.size());
    for (size_t i = 0; i < sc.size(); ++i) {
      if (!is_integer(sc[i])) throw std::logic_error("non-integral weight drop");
      diff_sr.c[i] = static_cast<int>(rat_to_long(sc[i]));
    }
  }
  int H = diff_sr.height();

  std::vector<Chev> gens;
  std::vector<int> cost;
  for (const Root& b : rs.roots()) {
    if (b.height() < 0) {
      gens.push_back(rs.root_vector(b));
      cost.push_back(-b.height());
    }
  }

  std::vector<VMono> monos;
  {
    VMono cur;
    enumerate_monos(gens, cost, 0, H, cur, monos);
  }
  std::stable_sort(monos.begin(), monos.end(), [&](const VMono& a, const VMono& b) {
    int da = ctx.drop_height(a), db = ctx.drop_height(b);
    if (da != db) return da < db;
    return a < b;
  });

  // group complete weight spaces, cut each by the kernel of its Gram matrix
  std::map<Weight, std::vector<VMono>> spaces;
  std::vector<Weight> order;
  for (const VMono& m : monos) {
    Weight w = ctx.weight_of(m);
    auto it = spaces.find(w);
    if (it == spaces.end()) order.push_back(w);
    spaces[w].push_back(m);
  }
  std::stable_sort(order.begin(), order.end(), [&](const Weight& a, const Weight& b) {
    int ha = ctx.drop_height(spaces[a].front());
    int hb = ctx.drop_height(spaces[b].front());
    if (ha != hb) return ha < hb;
    return a < b;
  });

  std::vector<VMono> basis;                 // representative monomials
  std::map<VMono, std::map<int, Rat>> reduce_map;  // window monomial -> quotient coords
  for (const Weight& w : order) {
    const std::vector<VMono>& ms = spaces[w];
    int n = static_cast<int>(ms.size());
    QMat g(n, QVec(n));
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) g[i][j] = g[j][i] = ctx.pair(ms[i], ms[j]);
    QMat rad = kernel_basis(g);
    std::vector<int> piv = rref(rad);
    std::vector<bool> is_piv(n, false);
    for (int p : piv) is_piv[p] = true;

    std::vector<int> rep_ids(n, -1);
    for (int i = 0; i < n; ++i) {
      if (!is_piv[i]) {
        rep_ids[i] = static_cast<int>(basis.size());
        basis.push_back(ms[i]);
        weights_.push_back(w);
        reduce_map[ms[i]] = {{rep_ids[i], Rat(1)}};
      }
    }
    for (size_t r = 0; r < piv.size(); ++r) {
      std::map<int, Rat> expansion;
      for (int j = 0; j < n; ++j) {
        if (is_piv[j] || mla::is_zero(rad[r][j])) continue;
        expansion[rep_ids[j]] = -rad[r][j];
      }
      reduce_map[ms[piv[r]]] = std::move(expansion);
    }
    std::vector<int> ids;
    for (int i = 0; i < n; ++i)
      if (rep_ids[i] >= 0) ids.push_back(rep_ids[i]);
    if (!ids.empty()) blocks_[w] = std::move(ids);
  }

  if (static_cast<long>(basis.size()) != rs.weyl_dimension(lambda_))
    throw std::logic_error("module dimension disagrees with the Weyl formula");

  auto reduce = [&](const VElem& e) {
    std::map<int, Rat> out;
    for (const auto& [m, c] : e) {
      auto it = reduce_map.find(m);
      if (it == reduce_map.end()) continue;  // beyond the weight window: radical
      for (const auto& [idx, cc] : it->second) {
        Rat& slot = out[idx];
        slot += c * cc;
        if (mla::is_zero(slot)) out.erase(idx);
      }
    }
    return out;
  };

  int dim = static_cast<int>(basis.size());
  actions_.assign(rs.dim(), std::vector<std::map<int, Rat>>(dim));
  for (int id = 0; id < rs.dim(); ++id) {
    Chev g{id};
    for (int i = 0; i < dim; ++i) {
      VElem e;
      ctx.act(g, basis[i], Rat(1), e);
      actions_[id][i] = reduce(e);
    }
  }

  gram_.assign(dim, QVec(dim));
  for (int i = 0; i < dim; ++i)
    for (int j = i; j < dim; ++j) gram_[i][j] = gram_[j][i] = ctx.pair(basis[i], basis[j]);
}

}  // namespace mla
