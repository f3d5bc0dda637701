#include "mla/modules.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <sstream>

#ifdef MLA_HAVE_OPENMP
#include <omp.h>
#endif

namespace mla {

void sv_axpy(SparseVec& acc, const SparseVec& v, const Rat& c) {
  if (mla::is_zero(c)) return;
  for (const auto& [i, a] : v) {
    Rat& slot = acc[i];
    slot += c * a;
    if (mla::is_zero(slot)) acc.erase(i);
  }
}

namespace {

void fv_add(FormalVec& acc, const TowerKey& k, const Rat& c) {
  if (mla::is_zero(c)) return;
  Rat& slot = acc[k];
  slot += c;
  if (mla::is_zero(slot)) acc.erase(k);
}

// head factor of the level-j monomial, one copy removed
TowerKey pop_head(const TowerKey& key, int j, LoopGen& head) {
  TowerKey rest = key;
  auto& f = rest.monos[j - 1].factors;
  head = f.front().first;
  if (f.front().second > 1) {
    f.front().second -= 1;
  } else {
    f.erase(f.begin());
  }
  return rest;
}

struct Engine {
  const AlgebraConfig& cfg;
  const WeylModule& W;

  // x (X) t^n acting at level j; n has j entries, levels above j are
  // untouched by construction
  void act(int j, Chev x, const MultiIndex& n, const TowerKey& key, const Rat& scale,
           FormalVec& out) const {
    const PbwMonomial& m = key.monos[j - 1];
    if (m.is_unit()) {
      int last = n.e[j - 1];
      if (last > 0) return;  // raising along the level axis kills 1 (X) base
      if (last < 0) {
        left_mul(j, loop_gen(x, n), key, scale, out);
        return;
      }
      if (j == 1) {
        for (const auto& [idx, c] : W.action(x, key.weyl)) {
          TowerKey res = key;
          res.weyl = idx;
          fv_add(out, res, scale * c);
        }
        return;
      }
      MultiIndex down;
      down.e.assign(n.e.begin(), n.e.end() - 1);
      act(j - 1, x, down, key, scale, out);
      return;
    }
    LoopGen g0;
    TowerKey rest = pop_head(key, j, g0);
    std::vector<std::pair<LoopGen, Rat>> br;
    bracket_gen(*cfg.R, loop_gen(x, n), g0, br);
    for (const auto& [z, c] : br) {
      if (z.kind == LoopGen::Kind::loop) {
        act(j, z.x, z.n, rest, scale * c, out);
      } else {
        fv_add(out, rest, scale * c * cfg.level(z.index));
      }
    }
    FormalVec tmp;
    act(j, x, n, rest, scale, tmp);
    for (const auto& [k2, c2] : tmp) left_mul(j, g0, k2, c2, out);
  }

  // multiply by a level-j lowering generator on the left
  void left_mul(int j, const LoopGen& f, const TowerKey& key, const Rat& scale,
                FormalVec& out) const {
    const PbwMonomial& m = key.monos[j - 1];
    if (m.is_unit() || f <= m.factors.front().first) {
      TowerKey res = key;
      auto& fac = res.monos[j - 1].factors;
      if (!fac.empty() && fac.front().first == f) {
        fac.front().second += 1;
      } else {
        fac.insert(fac.begin(), {f, 1});
      }
      fv_add(out, res, scale);
      return;
    }
    LoopGen g0;
    TowerKey rest = pop_head(key, j, g0);
    FormalVec tmp;
    left_mul(j, f, rest, scale, tmp);
    for (const auto& [k2, c2] : tmp) left_mul(j, g0, k2, c2, out);
    std::vector<std::pair<LoopGen, Rat>> br;
    bracket_gen(*cfg.R, f, g0, br);
    for (const auto& [z, c] : br) {
      // both inputs lower along the level axis, so z does too
      left_mul(j, z, rest, scale * c, out);
    }
  }

  Rat pair(const TowerKey& a, const TowerKey& b, PairMemo& memo) const {
    int top = 0;
    for (int j = static_cast<int>(a.monos.size()); j >= 1; --j) {
      if (!a.monos[j - 1].is_unit() || !b.monos[j - 1].is_unit()) {
        top = j;
        break;
      }
    }
    if (top == 0) return W.pair(a.weyl, b.weyl);

    const TowerKey* lhs = &a;
    const TowerKey* rhs = &b;
    bool swapped = false;
    if (lhs->monos[top - 1].is_unit() || (!rhs->monos[top - 1].is_unit() && *rhs < *lhs)) {
      std::swap(lhs, rhs);
      swapped = true;
    }
    auto mk = std::make_pair(*lhs, *rhs);
    auto hit = memo.find(mk);
    if (hit != memo.end()) return hit->second;

    LoopGen g0;
    TowerKey rest = pop_head(*lhs, top, g0);
    FormalVec moved;
    act(top, cfg.R->sigma(g0.x), -g0.n, *rhs, Rat(1), moved);
    Rat total(0);
    for (const auto& [k2, c2] : moved) total += c2 * pair(rest, k2, memo);
    memo.emplace(std::move(mk), total);
    (void)swapped;
    return total;
  }
};

}  // namespace

std::vector<int> tower_d_raw(const TowerKey& k) {
  std::vector<int> d(k.monos.size(), 0);
  for (size_t j = 0; j < k.monos.size(); ++j)
    for (size_t i = 0; i <= j; ++i) d[i] += k.monos[j].axis_degree(static_cast<int>(i));
  return d;
}

Weight tower_weight(const RootSystemData& R, const WeylModule& w, const TowerKey& k) {
  Weight out = w.weight_of(k.weyl);
  for (const auto& mono : k.monos)
    for (const auto& [g, e] : mono.factors) out = out + e * R.chev_weight(g.x);
  return out;
}

void tower_act(const AlgebraConfig& cfg, const WeylModulePtr& w, const LoopGen& g,
               const TowerKey& key, const Rat& scale, FormalVec& out) {
  if (g.kind != LoopGen::Kind::loop)
    throw std::invalid_argument("tower_act handles loop generators only");
  if (g.n.size() != static_cast<int>(key.monos.size()))
    throw std::invalid_argument("generator level does not match the key");
  Engine e{cfg, *w};
  e.act(static_cast<int>(key.monos.size()), g.x, g.n, key, scale, out);
}

Rat tower_pair(const AlgebraConfig& cfg, const WeylModulePtr& w, const TowerKey& a,
               const TowerKey& b, PairMemo& memo) {
  Engine e{cfg, *w};
  return e.pair(a, b, memo);
}

TowerModulePtr TowerModule::induce(const AlgebraConfig& cfg, WeylModulePtr base,
                                   TruncationBox box, int shift, bool quotient, int jobs) {
  std::shared_ptr<TowerModule> m(new TowerModule());
  m->cfg_ = cfg;
  m->level_ = 1;
  m->weyl_ = std::move(base);
  m->build(box, shift, quotient, jobs);
  return m;
}

TowerModulePtr TowerModule::induce(const AlgebraConfig& cfg, TowerModulePtr base,
                                   TruncationBox box, int shift, bool quotient, int jobs) {
  std::shared_ptr<TowerModule> m(new TowerModule());
  m->cfg_ = cfg;
  m->level_ = base->level_ + 1;
  m->weyl_ = base->weyl_;
  m->base_ = std::move(base);
  m->build(box, shift, quotient, jobs);
  return m;
}

void TowerModule::build(TruncationBox box, int shift, bool quotient, int jobs) {
  if (box.depth < 0 || box.lateral < 0) throw std::invalid_argument("bad truncation box");
  box_ = box;
  quotient_ = quotient;
  if (base_) shifts_ = base_->shifts_;
  shifts_.push_back(shift);

  const RootSystemData& R = *cfg_.R;

  // level generators inside the window, in PBW order
  std::vector<LoopGen> gens;
  {
    std::vector<MultiIndex> exps;
    MultiIndex cur;
    cur.e.assign(level_, 0);
    std::function<void(int)> rec = [&](int axis) {
      if (axis == level_ - 1) {
        for (int d = -box.depth; d <= -1; ++d) {
          cur.e[axis] = d;
          exps.push_back(cur);
        }
        cur.e[axis] = 0;
        return;
      }
      for (int v = -box.lateral; v <= box.lateral; ++v) {
        cur.e[axis] = v;
        rec(axis + 1);
      }
      cur.e[axis] = 0;
    };
    rec(0);
    for (int id = 0; id < R.dim(); ++id)
      for (const MultiIndex& n : exps) gens.push_back(loop_gen(Chev{id}, n));
    std::sort(gens.begin(), gens.end());
  }

  // all level monomials with axis depth within the window
  std::vector<PbwMonomial> monos;
  {
    PbwMonomial cur;
    std::function<void(size_t, int)> rec = [&](size_t gi, int budget) {
      monos.push_back(cur);
      for (size_t i = gi; i < gens.size(); ++i) {
        int cost = -gens[i].n.e[level_ - 1];
        if (cost > budget) continue;
        cur.factors.push_back({gens[i], 1});
        int used = cost;
        while (used <= budget) {
          rec(i + 1, budget - used);
          cur.factors.back().second += 1;
          used += cost;
        }
        cur.factors.pop_back();
      }
    };
    rec(0, box.depth);
  }

  int base_dim = base_ ? base_->dim() : weyl_->dim();
  std::vector<TowerKey> cands;
  cands.reserve(monos.size() * base_dim);
  for (int b = 0; b < base_dim; ++b) {
    TowerKey proto;
    if (base_) {
      proto = base_->key(b);
    } else {
      proto.weyl = b;
    }
    proto.monos.push_back(PbwMonomial{});
    for (const PbwMonomial& m : monos) {
      proto.monos.back() = m;
      cands.push_back(proto);
    }
  }

  auto block_of = [&](const TowerKey& k) {
    std::vector<int> d = tower_d_raw(k);
    for (size_t i = 0; i < d.size(); ++i) d[i] += shifts_[i];
    return BlockKey{std::move(d), tower_weight(R, *weyl_, k)};
  };

  std::map<BlockKey, std::vector<TowerKey>> grouped;
  for (TowerKey& k : cands) grouped[block_of(k)].push_back(std::move(k));
  for (auto& [bk, ks] : grouped) std::sort(ks.begin(), ks.end());

  if (!quotient_) {
    for (auto& [bk, ks] : grouped) {
      std::vector<int> ids;
      ids.reserve(ks.size());
      for (TowerKey& k : ks) {
        ids.push_back(static_cast<int>(keys_.size()));
        d_.push_back(bk.d);
        wt_.push_back(bk.wt);
        keys_.push_back(std::move(k));
      }
      blocks_.emplace(bk, std::move(ids));
    }
    for (int i = 0; i < static_cast<int>(keys_.size()); ++i) index_.emplace(keys_[i], i);
    return;
  }

  // blockwise radical of the contravariant form
  std::vector<const BlockKey*> order;
  std::vector<const std::vector<TowerKey>*> parents;
  for (auto& [bk, ks] : grouped) {
    order.push_back(&bk);
    parents.push_back(&ks);
  }
  int nb = static_cast<int>(order.size());
  std::vector<QMat> rads(nb);
  std::vector<std::vector<int>> pivots(nb);

#ifdef MLA_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(std::max(1, jobs))
#endif
  for (int bi = 0; bi < nb; ++bi) {
    const std::vector<TowerKey>& ks = *parents[bi];
    int n = static_cast<int>(ks.size());
    QMat g(n, QVec(n));
    PairMemo memo;
    Engine eng{cfg_, *weyl_};
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) g[i][j] = g[j][i] = eng.pair(ks[i], ks[j], memo);
    rads[bi] = kernel_basis(g);
    pivots[bi] = rref(rads[bi]);
  }
  (void)jobs;

  for (int bi = 0; bi < nb; ++bi) {
    const BlockKey& bk = *order[bi];
    const std::vector<TowerKey>& ks = *parents[bi];
    int n = static_cast<int>(ks.size());
    QuotientBlock qb;
    qb.parents = ks;
    for (int i = 0; i < n; ++i) qb.parent_index.emplace(ks[i], i);
    qb.rad_dim = static_cast<int>(pivots[bi].size());
    if (qb.rad_dim > 0 && bk.d[level_ - 1] == shifts_[level_ - 1])
      throw std::domain_error(
          "degenerate degree-0 pairing; quotient the base before inducing");

    std::vector<bool> is_piv(n, false);
    for (int p : pivots[bi]) is_piv[p] = true;
    std::vector<int> rep_ids(n, -1);
    std::vector<int> ids;
    for (int i = 0; i < n; ++i) {
      if (is_piv[i]) continue;
      int gid = static_cast<int>(keys_.size());
      rep_ids[i] = gid;
      ids.push_back(gid);
      d_.push_back(bk.d);
      wt_.push_back(bk.wt);
      keys_.push_back(ks[i]);
    }
    qb.expand.assign(n, {});
    for (int i = 0; i < n; ++i)
      if (rep_ids[i] >= 0) qb.expand[i] = {{rep_ids[i], Rat(1)}};
    for (size_t r = 0; r < pivots[bi].size(); ++r) {
      std::map<int, Rat> exp;
      for (int j = 0; j < n; ++j) {
        if (is_piv[j] || mla::is_zero(rads[bi][r][j])) continue;
        exp[rep_ids[j]] = -rads[bi][r][j];
      }
      qb.expand[pivots[bi][r]] = std::move(exp);
    }
    qb.rep_global = ids;
    if (!ids.empty()) blocks_.emplace(bk, std::move(ids));
    qblocks_.emplace(bk, std::move(qb));
  }
  for (int i = 0; i < static_cast<int>(keys_.size()); ++i) index_.emplace(keys_[i], i);
}

int TowerModule::index_of(const TowerKey& k) const {
  auto it = index_.find(k);
  return it == index_.end() ? -1 : it->second;
}

int TowerModule::radical_dim(const BlockKey& b) const {
  auto it = qblocks_.find(b);
  return it == qblocks_.end() ? 0 : it->second.rad_dim;
}

int TowerModule::parent_dim(const BlockKey& b) const {
  if (quotient_) {
    auto it = qblocks_.find(b);
    return it == qblocks_.end() ? 0 : static_cast<int>(it->second.parents.size());
  }
  auto it = blocks_.find(b);
  return it == blocks_.end() ? 0 : static_cast<int>(it->second.size());
}

void TowerModule::reduce_key(const TowerKey& k, const Rat& c, SparseVec& out) const {
  const PbwMonomial& top = k.monos.at(level_ - 1);
  if (-top.axis_degree(level_ - 1) > box_.depth) {
    std::ostringstream os;
    os << "depth " << -top.axis_degree(level_ - 1) << " exceeds the window ("
       << box_.depth << ") at level " << level_;
    throw box_overflow(os.str());
  }
  for (const auto& [g, e] : top.factors) {
    for (int i = 0; i + 1 < level_; ++i) {
      if (std::abs(g.n.e[i]) > box_.lateral) {
        std::ostringstream os;
        os << "lateral exponent " << g.n.e[i] << " exceeds the window ("
           << box_.lateral << ") at level " << level_;
        throw box_overflow(os.str());
      }
    }
  }

  SparseVec base_coords;
  if (base_) {
    TowerKey bk;
    bk.monos.assign(k.monos.begin(), k.monos.end() - 1);
    bk.weyl = k.weyl;
    base_->reduce_key(bk, Rat(1), base_coords);
  } else {
    base_coords.emplace(k.weyl, Rat(1));
  }

  for (const auto& [bidx, cb] : base_coords) {
    TowerKey cand;
    if (base_) {
      cand = base_->key(bidx);
    } else {
      cand.weyl = bidx;
    }
    cand.monos.push_back(top);

    if (!quotient_) {
      int idx = index_of(cand);
      if (idx < 0) throw std::logic_error("in-window key missing from the basis");
      Rat& slot = out[idx];
      slot += c * cb;
      if (mla::is_zero(slot)) out.erase(idx);
      continue;
    }
    std::vector<int> d = tower_d_raw(cand);
    for (size_t i = 0; i < d.size(); ++i) d[i] += shifts_[i];
    BlockKey bk{std::move(d), tower_weight(*cfg_.R, *weyl_, cand)};
    auto qit = qblocks_.find(bk);
    if (qit == qblocks_.end()) throw std::logic_error("in-window block missing");
    auto pit = qit->second.parent_index.find(cand);
    if (pit == qit->second.parent_index.end())
      throw std::logic_error("in-window key missing from its block");
    for (const auto& [gid, cc] : qit->second.expand[pit->second]) {
      Rat& slot = out[gid];
      slot += c * cb * cc;
      if (mla::is_zero(slot)) out.erase(gid);
    }
  }
}

SparseVec TowerModule::act_gen(const LoopGen& g, int i) const {
  SparseVec out;
  switch (g.kind) {
    case LoopGen::Kind::central: {
      out.emplace(i, cfg_.level(g.index));
      return out;
    }
    case LoopGen::Kind::derivation: {
      out.emplace(i, Rat(d_.at(i).at(g.index)));
      return out;
    }
    case LoopGen::Kind::loop:
      break;
  }
  FormalVec formal;
  tower_act(cfg_, weyl_, g, keys_.at(i), Rat(1), formal);
  for (const auto& [k2, c2] : formal) reduce_key(k2, c2, out);
  return out;
}

SparseVec TowerModule::act(const LoopElement& x, const SparseVec& v) const {
  SparseVec out;
  for (const auto& [g, cg] : x.terms()) {
    for (const auto& [i, ci] : v) {
      SparseVec one = act_gen(g, i);
      sv_axpy(out, one, cg * ci);
    }
  }
  return out;
}

Rat TowerModule::pair(int i, int j) const {
  Engine e{cfg_, *weyl_};
  return e.pair(keys_.at(i), keys_.at(j), pair_memo_);
}

QMat TowerModule::gram(const BlockKey& b) const {
  const std::vector<int>& ids = blocks_.at(b);
  int n = static_cast<int>(ids.size());
  QMat g(n, QVec(n));
  Engine e{cfg_, *weyl_};
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      g[i][j] = g[j][i] = e.pair(keys_[ids[i]], keys_[ids[j]], pair_memo_);
  return g;
}

TowerModulePtr irreducible_quotient(const TowerModulePtr& m, int jobs) {
  int shift = m->shifts().back();
  if (m->level() == 1)
    return TowerModule::induce(m->config(), m->weyl(), m->box(), shift, true, jobs);
  return TowerModule::induce(m->config(), m->base(), m->box(), shift, true, jobs);
}

}  // namespace mla
