#include "mla/root_system.hpp"

#include <algorithm>
#include <cassert>
#include <set>
#include <stdexcept>

#include "mla/linalg.hpp"

namespace mla {

Weight operator+(const Weight& a, const Weight& b) {
  assert(a.c.size() == b.c.size());
  Weight r = a;
  for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] += b.c[i];
  return r;
}

Weight operator-(const Weight& a, const Weight& b) {
  assert(a.c.size() == b.c.size());
  Weight r = a;
  for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] -= b.c[i];
  return r;
}

Weight operator*(int s, const Weight& a) {
  Weight r = a;
  for (auto& x : r.c) x *= s;
  return r;
}

void gc_axpy(GCombo& acc, const GCombo& src, const Rat& scale) {
  if (is_zero(scale)) return;
  for (const auto& [g, c] : src) {
    Rat& slot = acc[g];
    slot += c * scale;
    if (is_zero(slot)) acc.erase(g);
  }
}

GCombo gc_scale(const GCombo& a, const Rat& s) {
  GCombo r;
  if (is_zero(s)) return r;
  for (const auto& [g, c] : a) r[g] = c * s;
  return r;
}

namespace {

// Dense (n+1)x(n+1) rational matrix, row major, for the sl_{n+1} realization.
struct Mat {
  int n1 = 0;
  std::vector<Rat> a;
  explicit Mat(int n1_) : n1(n1_), a(n1_ * n1_, Rat(0)) {}
  Rat& at(int i, int j) { return a[i * n1 + j]; }
  const Rat& at(int i, int j) const { return a[i * n1 + j]; }
};

Mat commutator(const Mat& x, const Mat& y) {
  Mat r(x.n1);
  for (int i = 0; i < x.n1; ++i)
    for (int k = 0; k < x.n1; ++k) {
      const Rat& xik = x.at(i, k);
      const Rat& yik = y.at(i, k);
      bool xz = is_zero(xik), yz = is_zero(yik);
      if (xz && yz) continue;
      for (int j = 0; j < x.n1; ++j) {
        if (!xz) r.at(i, j) += xik * y.at(k, j);
        if (!yz) r.at(i, j) -= yik * x.at(k, j);
      }
    }
  return r;
}

Rat trace_form(const Mat& x, const Mat& y) {
  Rat t(0);
  for (int i = 0; i < x.n1; ++i)
    for (int j = 0; j < x.n1; ++j) t += x.at(i, j) * y.at(j, i);
  return t;
}

QMat qmat_inverse(const QMat& m) {
  const int n = (int)m.size();
  QMat inv(n, QVec(n, Rat(0)));
  for (int c = 0; c < n; ++c) {
    QVec e(n, Rat(0)), x;
    e[c] = 1;
    if (!solve(m, e, x)) throw std::runtime_error("singular matrix");
    for (int r = 0; r < n; ++r) inv[r][c] = x[r];
  }
  return inv;
}

}  // namespace

std::shared_ptr<const RootSystemData> RootSystemData::build(char series, int rank) {
  if (series != 'A' || rank < 1 || rank > 8)
    throw std::invalid_argument("unsupported algebra type");
  auto R = std::shared_ptr<RootSystemData>(new RootSystemData());
  R->series_ = series;
  R->rank_ = rank;
  const int n = rank, n1 = rank + 1;

  // Roots eps_a - eps_b with simple-root coordinates, sorted by height then
  // coordinates; this ordering defines the Chevalley basis ids after the
  // Cartan block.
  std::vector<Root> roots;
  std::map<Root, std::pair<int, int>> root_ab;
  for (int a = 0; a < n1; ++a)
    for (int b = 0; b < n1; ++b) {
      if (a == b) continue;
      Root r;
      r.c.assign(n, 0);
      for (int i = std::min(a, b); i < std::max(a, b); ++i) r.c[i] = a < b ? 1 : -1;
      root_ab[r] = {a, b};
      roots.push_back(r);
    }
  std::sort(roots.begin(), roots.end(), [](const Root& x, const Root& y) {
    if (x.height() != y.height()) return x.height() < y.height();
    return x.c < y.c;
  });
  R->roots_ = roots;
  for (int i = 0; i < (int)roots.size(); ++i) R->root_ids_[roots[i]] = rank + i;
  R->theta_ = roots.back();

  // Matrix realization of every basis element.
  const int dim = rank + (int)roots.size();
  std::vector<Mat> mats(dim, Mat(n1));
  for (int i = 0; i < rank; ++i) {
    // h_{i+1}: fundamental coweight, 1 - (i+1)/(n+1) on the first i+1
    // diagonal slots and -(i+1)/(n+1) after.
    Rat hi = Rat(i + 1) / Rat(n1);
    for (int d = 0; d < n1; ++d) mats[i].at(d, d) = (d <= i ? Rat(Rat(1) - hi) : Rat(-hi));
  }
  for (int i = 0; i < (int)roots.size(); ++i) {
    auto [a, b] = root_ab.at(roots[i]);
    mats[rank + i].at(a, b) = 1;
  }

  auto decompose = [&](const Mat& m) {
    GCombo out;
    for (int a = 0; a < n1; ++a)
      for (int b = 0; b < n1; ++b) {
        if (a == b || is_zero(m.at(a, b))) continue;
        Root r;
        r.c.assign(n, 0);
        for (int i = std::min(a, b); i < std::max(a, b); ++i) r.c[i] = a < b ? 1 : -1;
        out[Chev{R->root_ids_.at(r)}] = m.at(a, b);
      }
    for (int j = 0; j < n; ++j) {
      Rat cj = m.at(j, j) - m.at(j + 1, j + 1);  // alpha_j applied to diag
      if (!is_zero(cj)) out[Chev{j}] = cj;
    }
    return out;
  };

  R->bracket_.assign(dim, std::vector<GCombo>(dim));
  R->form_.assign(dim, std::vector<Rat>(dim, Rat(0)));
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      R->bracket_[i][j] = decompose(commutator(mats[i], mats[j]));
      R->form_[i][j] = trace_form(mats[i], mats[j]);
    }

  // Cartan matrix rows: a_ij = alpha_i(alpha_j-coroot).
  R->cartan_.assign(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      R->cartan_[i][j] = (i == j ? 2 : (std::abs(i - j) == 1 ? -1 : 0));

  // Fundamental -> simple coordinate change: lambda = A^T s.
  QMat at(n, QVec(n, Rat(0)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) at[i][j] = R->cartan_[j][i];
  R->fund_to_simple_ = qmat_inverse(at);

  // Form on weights from the Cartan Gram matrix: <lam, mu> = s^T G^{-1} s'.
  QMat gram(n, QVec(n, Rat(0)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) gram[i][j] = R->form_[i][j];
  QMat ginv = qmat_inverse(gram);
  QMat mt(n, QVec(n, Rat(0)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) mt[i][j] = R->fund_to_simple_[j][i];
  R->fund_form_ = qmat_mul(mt, qmat_mul(ginv, R->fund_to_simple_));

  // Dual basis for the Casimir sums: Cartan block from the Gram inverse,
  // root vectors pair with the opposite root.
  for (int i = 0; i < n; ++i) {
    GCombo d;
    for (int j = 0; j < n; ++j)
      if (!is_zero(ginv[i][j])) d[Chev{j}] = ginv[i][j];
    R->dual_.push_back({Chev{i}, std::move(d)});
  }
  for (int i = 0; i < (int)roots.size(); ++i) {
    Root neg = roots[i];
    for (auto& x : neg.c) x = -x;
    Chev g{rank + i}, gn{R->root_ids_.at(neg)};
    Rat pairing = R->form_[g.id][gn.id];
    GCombo d;
    d[gn] = Rat(1) / pairing;
    R->dual_.push_back({g, std::move(d)});
  }

  // Dual Coxeter number via 1 + <rho, theta> (theta has squared length 2).
  Weight rho;
  rho.c.assign(n, 1);
  Weight thw = R->root_weight(R->theta_);
  R->h_dual_ = 1 + (int)rat_to_long(R->form_weights(rho, thw));

  // Weyl group closure from simple reflections on fundamental coordinates.
  if (rank <= 5) {
    std::set<std::vector<std::vector<int>>> seen;
    std::vector<WeylElement> frontier;
    WeylElement id;
    id.mat.assign(n, std::vector<int>(n, 0));
    for (int i = 0; i < n; ++i) id.mat[i][i] = 1;
    id.sign = 1;
    std::vector<WeylElement> gens;
    for (int i = 0; i < n; ++i) {
      WeylElement s = id;
      for (int j = 0; j < n; ++j) s.mat[j][i] -= R->cartan_[i][j];
      s.sign = -1;
      gens.push_back(s);
    }
    seen.insert(id.mat);
    R->weyl_.push_back(id);
    frontier.push_back(id);
    while (!frontier.empty()) {
      std::vector<WeylElement> next;
      for (const auto& w : frontier)
        for (const auto& s : gens) {
          WeylElement ws;
          ws.mat.assign(n, std::vector<int>(n, 0));
          for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
              for (int k = 0; k < n; ++k) ws.mat[i][j] += s.mat[i][k] * w.mat[k][j];
          ws.sign = s.sign * w.sign;
          if (seen.insert(ws.mat).second) {
            R->weyl_.push_back(ws);
            next.push_back(ws);
          }
        }
      frontier = std::move(next);
    }
    std::sort(R->weyl_.begin(), R->weyl_.end());
  }

  return R;
}

std::shared_ptr<const RootSystemData> RootSystemData::from_name(const std::string& s) {
  if (s.size() < 2) throw std::invalid_argument("bad algebra name: " + s);
  return build(s[0], std::stoi(s.substr(1)));
}

Chev RootSystemData::cartan(int i) const {
  assert(i >= 0 && i < rank_);
  return Chev{i};
}

int RootSystemData::cartan_index(Chev g) const {
  assert(is_cartan(g));
  return g.id;
}

Chev RootSystemData::root_vector(const Root& b) const {
  auto it = root_ids_.find(b);
  if (it == root_ids_.end()) throw std::invalid_argument("not a root");
  return Chev{it->second};
}

const Root& RootSystemData::root_of(Chev g) const {
  assert(!is_cartan(g) && g.id < dim());
  return roots_[g.id - rank_];
}

const GCombo& RootSystemData::bracket(Chev a, Chev b) const {
  return bracket_[a.id][b.id];
}

GCombo RootSystemData::bracket(const GCombo& a, const GCombo& b) const {
  GCombo out;
  for (const auto& [ga, ca] : a)
    for (const auto& [gb, cb] : b) gc_axpy(out, bracket_[ga.id][gb.id], ca * cb);
  return out;
}

Rat RootSystemData::form(Chev a, Chev b) const { return form_[a.id][b.id]; }

Rat RootSystemData::form(const GCombo& a, const GCombo& b) const {
  Rat out(0);
  for (const auto& [ga, ca] : a)
    for (const auto& [gb, cb] : b) out += form_[ga.id][gb.id] * ca * cb;
  return out;
}

Weight RootSystemData::chev_weight(Chev g) const {
  if (is_cartan(g)) {
    Weight w;
    w.c.assign(rank_, 0);
    return w;
  }
  return root_weight(root_of(g));
}

Weight RootSystemData::root_weight(const Root& b) const {
  // Fundamental coordinate j of a root is its pairing with the j-th simple
  // coroot; for type A that is the Cartan-matrix contraction of the simple
  // coordinates.
  Weight w;
  w.c.assign(rank_, 0);
  for (int j = 0; j < rank_; ++j) {
    int v = 0;
    for (int i = 0; i < rank_; ++i) v += b.c[i] * cartan_[i][j];
    w.c[j] = v;
  }
  return w;
}

Root RootSystemData::simple_root(int i) const {
  Root r;
  r.c.assign(rank_, 0);
  r.c[i] = 1;
  return r;
}

Rat RootSystemData::eval_on_h(const Weight& w, int i) const {
  return simple_coords(w)[i];
}

std::vector<Rat> RootSystemData::simple_coords(const Weight& w) const {
  QVec lam(rank_);
  for (int i = 0; i < rank_; ++i) lam[i] = w.c[i];
  return qmat_apply(fund_to_simple_, lam);
}

Rat RootSystemData::form_weights(const Weight& a, const Weight& b) const {
  Rat out(0);
  for (int i = 0; i < rank_; ++i)
    for (int j = 0; j < rank_; ++j)
      if (a.c[i] && b.c[j]) out += fund_form_[i][j] * Rat(a.c[i]) * Rat(b.c[j]);
  return out;
}

Weight RootSystemData::rho() const {
  Weight w;
  w.c.assign(rank_, 1);
  return w;
}

Weight RootSystemData::w0_image(const Weight& w) const {
  // Repeated simple reflections reach the antidominant chamber.
  Weight cur = w;
  bool moved = true;
  while (moved) {
    moved = false;
    for (int i = 0; i < rank_; ++i) {
      if (cur.c[i] > 0) {
        int ci = cur.c[i];
        for (int j = 0; j < rank_; ++j) cur.c[j] -= ci * cartan_[i][j];
        moved = true;
      }
    }
  }
  return cur;
}

Weight RootSystemData::weyl_act(const WeylElement& s, const Weight& w) const {
  Weight out;
  out.c.assign(rank_, 0);
  for (int i = 0; i < rank_; ++i)
    for (int j = 0; j < rank_; ++j) out.c[i] += s.mat[i][j] * w.c[j];
  return out;
}

Chev RootSystemData::sigma(Chev g) const {
  if (is_cartan(g)) return g;
  Root b = root_of(g);
  for (auto& c : b.c) c = -c;
  return root_vector(b);
}

long RootSystemData::weyl_dimension(const Weight& lambda) const {
  Weight lr = lambda + rho();
  Weight r = rho();
  Rat num(1), den(1);
  for (const auto& a : roots_) {
    if (a.height() <= 0) continue;
    Weight aw = root_weight(a);
    num *= form_weights(lr, aw);
    den *= form_weights(r, aw);
  }
  return rat_to_long(num / den);
}

}  // namespace mla
