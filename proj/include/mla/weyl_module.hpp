#pragma once

#include <map>
#include <memory>
#include <vector>

#include "mla/linalg.hpp"
#include "mla/root_system.hpp"

namespace mla {

// Finite-dimensional highest-weight module V(lambda) for the underlying
// simple algebra, realized as the quotient of the Verma module by the
// radical of the contravariant form. Basis vectors are indexed 0..dim-1
// with index 0 the highest weight vector; every basis vector has a
// definite weight. Actions of the Chevalley basis are stored as sparse
// column maps, and the contravariant Gram matrix is kept exactly.
class WeylModule {
 public:
  WeylModule(RootSystemPtr R, Weight lambda);

  const RootSystemPtr& algebra() const { return R_; }
  const Weight& highest_weight() const { return lambda_; }
  int dim() const { return static_cast<int>(weights_.size()); }
  const Weight& weight_of(int i) const { return weights_.at(i); }
  const std::map<Weight, std::vector<int>>& weight_blocks() const { return blocks_; }

  // g . (basis i) as a sparse coordinate vector
  const std::map<int, Rat>& action(Chev g, int i) const {
    return actions_.at(g.id).at(i);
  }

  // contravariant form <i, j>, normalized <0,0> = 1
  const Rat& pair(int i, int j) const { return gram_.at(i).at(j); }

 private:
  RootSystemPtr R_;
  Weight lambda_;
  std::vector<Weight> weights_;
  std::map<Weight, std::vector<int>> blocks_;
  std::vector<std::vector<std::map<int, Rat>>> actions_;
  QMat gram_;
};

using WeylModulePtr = std::shared_ptr<const WeylModule>;

}  // namespace mla
