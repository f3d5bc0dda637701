#pragma once

#include <map>
#include <memory>
#include <stdexcept>
#include <vector>

#include "mla/enveloping.hpp"
#include "mla/linalg.hpp"
#include "mla/loop_algebra.hpp"
#include "mla/weyl_module.hpp"

namespace mla {

// thrown when an action or reduction leaves the truncation window;
// truncation is always flagged, never applied silently
struct box_overflow : std::runtime_error {
  explicit box_overflow(const std::string& what) : std::runtime_error(what) {}
};

// window for one induction level: monomial depth along the level's own
// axis is at most `depth`, and every lateral exponent satisfies |n_i| <=
// `lateral`
struct TruncationBox {
  int depth = 0;
  int lateral = 0;
};

// exact position in the iterated induction: one normally ordered
// monomial of level-j lowering generators per level, plus a basis index
// in the underlying finite module
struct TowerKey {
  std::vector<PbwMonomial> monos;  // monos[j-1] holds the level-j factors
  int weyl = 0;
  auto operator<=>(const TowerKey&) const = default;
};

// vertical degrees (with grading shifts applied) together with the
// underlying finite weight
struct BlockKey {
  std::vector<int> d;
  Weight wt;
  auto operator<=>(const BlockKey&) const = default;
};

using SparseVec = std::map<int, Rat>;       // basis index -> coefficient
using FormalVec = std::map<TowerKey, Rat>;  // before reduction to the basis
using PairMemo = std::map<std::pair<TowerKey, TowerKey>, Rat>;

void sv_axpy(SparseVec& acc, const SparseVec& v, const Rat& c);

class TowerModule;
using TowerModulePtr = std::shared_ptr<const TowerModule>;

// truncated induced module at level k: Ind from a level-(k-1) module (or
// from the finite module when k = 1), with an optional grading shift on
// the new axis and an optional quotient by the radical of the
// contravariant form, taken blockwise
class TowerModule {
 public:
  static TowerModulePtr induce(const AlgebraConfig& cfg, WeylModulePtr base,
                               TruncationBox box, int shift = 0,
                               bool quotient = false, int jobs = 1);
  static TowerModulePtr induce(const AlgebraConfig& cfg, TowerModulePtr base,
                               TruncationBox box, int shift = 0,
                               bool quotient = false, int jobs = 1);

  int level() const { return level_; }
  const AlgebraConfig& config() const { return cfg_; }
  const RootSystemPtr& algebra() const { return cfg_.R; }
  const WeylModulePtr& weyl() const { return weyl_; }
  const TowerModulePtr& base() const { return base_; }  // null at level 1
  const TruncationBox& box() const { return box_; }
  bool is_quotient() const { return quotient_; }
  const std::vector<int>& shifts() const { return shifts_; }

  int dim() const { return static_cast<int>(keys_.size()); }
  const TowerKey& key(int i) const { return keys_.at(i); }
  int index_of(const TowerKey& k) const;  // -1 when absent
  const std::vector<int>& d_tuple(int i) const { return d_.at(i); }
  const Weight& weight_of(int i) const { return wt_.at(i); }
  const std::map<BlockKey, std::vector<int>>& blocks() const { return blocks_; }

  // radical dimension of a block (0 unless this module is a quotient)
  int radical_dim(const BlockKey& b) const;
  // dimension of the block before the quotient was taken
  int parent_dim(const BlockKey& b) const;

  // action of a single algebra generator on a basis vector; throws
  // box_overflow when the result cannot be represented in the window
  SparseVec act_gen(const LoopGen& g, int i) const;
  SparseVec act(const LoopElement& x, const SparseVec& v) const;

  // contravariant form, normalized to the base form in degree 0
  Rat pair(int i, int j) const;
  QMat gram(const BlockKey& b) const;

  // reduce a formal key (in-window check plus quotient expansion at
  // every level) to basis coordinates
  void reduce_key(const TowerKey& k, const Rat& c, SparseVec& out) const;

 private:
  TowerModule() = default;
  void build(TruncationBox box, int shift, bool quotient, int jobs);

  struct QuotientBlock {
    std::vector<TowerKey> parents;
    std::map<TowerKey, int> parent_index;
    std::vector<int> rep_global;          // global ids of kept parents
    std::vector<std::map<int, Rat>> expand;  // per parent: global coords
    int rad_dim = 0;
  };

  AlgebraConfig cfg_;
  int level_ = 0;
  WeylModulePtr weyl_;
  TowerModulePtr base_;
  TruncationBox box_;
  bool quotient_ = false;
  std::vector<int> shifts_;

  std::vector<TowerKey> keys_;
  std::map<TowerKey, int> index_;
  std::vector<std::vector<int>> d_;
  std::vector<Weight> wt_;
  std::map<BlockKey, std::vector<int>> blocks_;
  std::map<BlockKey, QuotientBlock> qblocks_;

  mutable PairMemo pair_memo_;
};

// quotient by the radical of the contravariant form, blockwise; requires
// a nondegenerate form on the base (checked in degree 0)
TowerModulePtr irreducible_quotient(const TowerModulePtr& m, int jobs = 1);

// exact pairing on the untruncated induced tower (no window applies)
Rat tower_pair(const AlgebraConfig& cfg, const WeylModulePtr& w, const TowerKey& a,
               const TowerKey& b, PairMemo& memo);

// formal action of a loop generator on a tower key (no window applies)
void tower_act(const AlgebraConfig& cfg, const WeylModulePtr& w, const LoopGen& g,
               const TowerKey& key, const Rat& scale, FormalVec& out);

std::vector<int> tower_d_raw(const TowerKey& k);
Weight tower_weight(const RootSystemData& R, const WeylModule& w, const TowerKey& k);

}  // namespace mla
