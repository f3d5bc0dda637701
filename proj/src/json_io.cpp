#include "mla/json_io.hpp"

#include <sstream>

namespace mla {

namespace {

std::vector<int> int_vector(const Json& j) {
  if (!j.is_array()) throw std::invalid_argument("expected an integer array");
  std::vector<int> out;
  for (const auto& x : j) {
    if (!x.is_number_integer()) throw std::invalid_argument("expected an integer array");
    out.push_back(x.get<int>());
  }
  return out;
}

}  // namespace

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

Json weight_json(const Weight& w) { return Json(w.c); }

Weight weight_parse(const Json& j, int rank) {
  Weight w{int_vector(j)};
  if ((int)w.c.size() != rank)
    throw std::invalid_argument("weight has " + std::to_string(w.c.size()) +
                                " coordinates, expected " + std::to_string(rank));
  return w;
}

Json chev_json(const RootSystemData& R, Chev g) {
  Json j;
  if (R.is_cartan(g))
    j["cartan"] = R.cartan_index(g) + 1;
  else
    j["root"] = Json(R.root_of(g).c);
  return j;
}

Chev chev_parse(const RootSystemData& R, const Json& j) {
  if (j.contains("cartan")) {
    int i = j.at("cartan").get<int>();
    if (i < 1 || i > R.rank()) throw std::invalid_argument("cartan index out of range");
    return R.cartan(i - 1);
  }
  if (j.contains("root")) {
    Root b{int_vector(j.at("root"))};
    if ((int)b.c.size() != R.rank() || !R.has_root(b))
      throw std::invalid_argument("not a root of " + R.name());
    return R.root_vector(b);
  }
  throw std::invalid_argument("generator needs a \"cartan\" or \"root\" field");
}

Json gen_json(const RootSystemData& R, const LoopGen& g) {
  Json j;
  switch (g.kind) {
    case LoopGen::Kind::loop:
      j["type"] = "loop";
      j["root_or_cartan"] = chev_json(R, g.x);
      j["power"] = Json(g.n.e);
      break;
    case LoopGen::Kind::central:
      j["type"] = "c";
      j["i"] = g.index + 1;
      break;
    case LoopGen::Kind::derivation:
      j["type"] = "d";
      j["i"] = g.index + 1;
      break;
  }
  return j;
}

LoopGen gen_parse(const RootSystemData& R, const Json& j, int k) {
  std::string type = j.at("type").get<std::string>();
  if (type == "loop") {
    MultiIndex n{int_vector(j.at("power"))};
    if (n.size() != k)
      throw std::invalid_argument("power has " + std::to_string(n.size()) +
                                  " exponents, expected " + std::to_string(k));
    return loop_gen(chev_parse(R, j.at("root_or_cartan")), n);
  }
  int i = j.at("i").get<int>();
  if (i < 1 || i > k) throw std::invalid_argument("axis index out of range");
  if (type == "c") return central_gen(i - 1, k);
  if (type == "d") return derivation_gen(i - 1, k);
  throw std::invalid_argument("unknown generator type \"" + type + "\"");
}

Json loop_element_json(const LoopElement& x) {
  Json j;
  j["k"] = x.loop_rank();
  Json terms = Json::array();
  for (const auto& [g, c] : x.terms()) {
    Json t;
    t["coeff"] = rat_to_string(c);
    t["gen"] = gen_json(*x.algebra(), g);
    terms.push_back(std::move(t));
  }
  j["terms"] = std::move(terms);
  return j;
}

LoopElement loop_element_parse(const RootSystemPtr& R, const Json& j) {
  int k = j.at("k").get<int>();
  if (k < 1) throw std::invalid_argument("loop rank must be positive");
  LoopElement x(R, k);
  for (const auto& t : j.at("terms"))
    x.add(gen_parse(*R, t.at("gen"), k), rat_from_string(t.at("coeff").get<std::string>()));
  return x;
}

Json pbw_element_json(const RootSystemData& R, int k, const PbwElement& z) {
  Json j;
  j["k"] = k;
  Json terms = Json::array();
  for (const auto& [m, c] : z.terms()) {
    Json t;
    t["coeff"] = rat_to_string(c);
    Json mono = Json::array();
    for (const auto& [g, e] : m.factors) mono.push_back(Json::array({gen_json(R, g), e}));
    t["monomial"] = std::move(mono);
    terms.push_back(std::move(t));
  }
  j["terms"] = std::move(terms);
  return j;
}

PbwElement pbw_element_parse(const RootSystemPtr& R, const Json& j) {
  int k = j.at("k").get<int>();
  if (k < 1) throw std::invalid_argument("loop rank must be positive");
  PbwElement z(R, k);
  for (const auto& t : j.at("terms")) {
    PbwMonomial m;
    for (const auto& fe : t.at("monomial")) {
      if (!fe.is_array() || fe.size() != 2)
        throw std::invalid_argument("monomial factors are [generator, exponent] pairs");
      int e = fe.at(1).get<int>();
      if (e < 1) throw std::invalid_argument("factor exponents are positive");
      m.factors.emplace_back(gen_parse(*R, fe.at(0), k), e);
    }
    for (size_t i = 1; i < m.factors.size(); ++i)
      if (!(m.factors[i - 1].first < m.factors[i].first))
        throw std::invalid_argument("monomial factors must be strictly increasing");
    z.add(m, rat_from_string(t.at("coeff").get<std::string>()));
  }
  return z;
}

Json certificate_json(const RootSystemData& R, int k, const WitnessCertificate& c) {
  Json j;
  j["case"] = c.case_id == 1 ? "I" : "II";
  Json mono = Json::array();
  for (const auto& [g, e] : c.top_monomial.factors)
    mono.push_back(Json::array({gen_json(R, g), e}));
  j["top_monomial"] = std::move(mono);
  j["top_coeff"] = rat_to_string(c.top_coeff);
  j["pivot"] = gen_json(R, c.pivot);
  j["pivot_exponent"] = c.pivot_exponent;
  j["witness"] = chev_json(R, c.witness);
  j["p0"] = c.p0;
  j["predicted"] = rat_to_string(c.predicted);
  j["degree"] = c.degree;
  (void)k;
  return j;
}

Json verify_report_json(const VerifyReport& r) {
  Json j;
  j["ok"] = r.ok;
  j["predicted"] = rat_to_string(r.predicted);
  Json cases = Json::array();
  for (const VerifyCase& c : r.cases) {
    Json cj;
    cj["r"] = c.r;
    cj["nonzero"] = c.nonzero;
    cj["target_coeff"] = rat_to_string(c.target_coeff);
    cases.push_back(std::move(cj));
  }
  j["cases"] = std::move(cases);
  return j;
}

Json root_system_json(const RootSystemData& R) {
  Json j;
  j["name"] = R.name();
  j["rank"] = R.rank();
  j["dim"] = R.dim();
  j["num_roots"] = R.num_roots();
  j["dual_coxeter"] = R.dual_coxeter();
  j["weyl_order"] = (int)R.weyl_group().size();
  Json cm = Json::array();
  for (int i = 0; i < R.rank(); ++i) {
    Json row = Json::array();
    for (int l = 0; l < R.rank(); ++l) row.push_back(R.cartan_entry(i, l));
    cm.push_back(std::move(row));
  }
  j["cartan_matrix"] = std::move(cm);
  j["highest_root"] = Json(R.highest_root().c);
  j["rho"] = weight_json(R.rho());

  Json basis = Json::array();
  for (int id = 0; id < R.dim(); ++id) {
    Json b;
    b["id"] = id;
    Chev g{id};
    if (R.is_cartan(g)) {
      b["kind"] = "cartan";
      b["index"] = R.cartan_index(g) + 1;
    } else {
      b["kind"] = "root";
      b["root"] = Json(R.root_of(g).c);
    }
    b["weight"] = weight_json(R.chev_weight(g));
    basis.push_back(std::move(b));
  }
  j["basis"] = std::move(basis);

  Json table = Json::array();
  for (int a = 0; a < R.dim(); ++a)
    for (int b = 0; b < R.dim(); ++b) {
      const GCombo& br = R.bracket(Chev{a}, Chev{b});
      if (br.empty()) continue;
      Json row;
      row["a"] = a;
      row["b"] = b;
      Json terms = Json::array();
      for (const auto& [g, c] : br) {
        Json t;
        t["gen"] = g.id;
        t["coeff"] = rat_to_string(c);
        terms.push_back(std::move(t));
      }
      row["terms"] = std::move(terms);
      table.push_back(std::move(row));
    }
  j["structure_constants"] = std::move(table);
  return j;
}

Json module_json(const TowerModule& m) {
  Json j;
  const AlgebraConfig& cfg = m.config();
  j["alg"] = cfg.R->name();
  j["k"] = m.level();
  j["p"] = cfg.p;
  j["lambda"] = weight_json(m.weyl()->highest_weight());

  std::vector<const TowerModule*> chain;
  for (const TowerModule* t = &m; t; t = t->base().get()) chain.push_back(t);
  Json levels = Json::array();
  for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
    Json lv;
    lv["depth"] = (*it)->box().depth;
    lv["lateral"] = (*it)->box().lateral;
    lv["shift"] = (*it)->shifts().back();
    lv["quotient"] = (*it)->is_quotient();
    levels.push_back(std::move(lv));
  }
  j["levels"] = std::move(levels);

  j["dim"] = m.dim();
  Json blocks = Json::array();
  for (const auto& [bk, ids] : m.blocks()) {
    Json b;
    b["d"] = Json(bk.d);
    b["weight"] = weight_json(bk.wt);
    b["dim"] = (int)ids.size();
    b["parent_dim"] = m.parent_dim(bk);
    b["radical_dim"] = m.radical_dim(bk);
    blocks.push_back(std::move(b));
  }
  j["blocks"] = std::move(blocks);
  return j;
}

TowerModulePtr module_from_json(const Json& j, int jobs) {
  auto R = RootSystemData::from_name(j.at("alg").get<std::string>());
  AlgebraConfig cfg{R, j.at("k").get<int>(), j.at("p").get<long>()};
  Weight lambda = weight_parse(j.at("lambda"), R->rank());
  if (!lambda.is_dominant()) throw std::invalid_argument("lambda must be dominant");
  const Json& levels = j.at("levels");
  if (!levels.is_array() || (int)levels.size() != cfg.k)
    throw std::invalid_argument("levels must list one box per loop axis");

  auto base = std::make_shared<WeylModule>(R, lambda);
  TowerModulePtr t;
  for (const auto& lv : levels) {
    TruncationBox box{lv.at("depth").get<int>(), lv.at("lateral").get<int>()};
    int shift = lv.value("shift", 0);
    bool quotient = lv.value("quotient", false);
    t = t ? TowerModule::induce(cfg, t, box, shift, quotient, jobs)
          : TowerModule::induce(cfg, base, box, shift, quotient, jobs);
  }
  return t;
}

Json pmatrix_json(const PMatrix& P) {
  Json j;
  j["alg"] = P.algebra()->name();
  j["p"] = P.p();
  if (P.is_identity()) {
    j["identity"] = true;
    return j;
  }
  Json entries = Json::array();
  for (const auto& [key, v] : P.entries()) {
    Json e;
    e["mu"] = weight_json(key.first);
    e["lambda"] = weight_json(key.second);
    e["value"] = v;
    entries.push_back(std::move(e));
  }
  j["entries"] = std::move(entries);
  if (P.has_box()) {
    Json box;
    box["lo"] = weight_json(P.box_lo());
    box["hi"] = weight_json(P.box_hi());
    j["complete_on"] = std::move(box);
  }
  return j;
}

PMatrix pmatrix_parse(const Json& j) {
  auto R = RootSystemData::from_name(j.at("alg").get<std::string>());
  long p = j.at("p").get<long>();
  if (j.value("identity", false)) return PMatrix::identity(R, p);
  PMatrix P(R, p);
  for (const auto& e : j.at("entries"))
    P.set(weight_parse(e.at("mu"), R->rank()), weight_parse(e.at("lambda"), R->rank()),
          e.at("value").get<long>());
  if (j.contains("complete_on")) {
    const Json& box = j.at("complete_on");
    P.set_complete_box(weight_parse(box.at("lo"), R->rank()),
                       weight_parse(box.at("hi"), R->rank()));
  }
  return P;
}

Json grothendieck_vector_json(const GrothendieckVector& v) {
  Json terms = Json::array();
  for (const auto& [w, c] : v) {
    Json t;
    t["weight"] = weight_json(w);
    t["coeff"] = c;
    terms.push_back(std::move(t));
  }
  return terms;
}

Json character_json(const CharacterPolynomial& ch) {
  Json terms = Json::array();
  for (const auto& [w, m] : ch) {
    Json t;
    t["weight"] = weight_json(w);
    t["mult"] = m;
    terms.push_back(std::move(t));
  }
  return terms;
}

std::string sparsevec_hash(const SparseVec& v) {
  std::ostringstream os;
  for (const auto& [i, c] : v) os << i << ":" << rat_to_string(c) << ";";
  std::uint64_t h = fnv1a(os.str());
  std::ostringstream hex;
  hex << std::hex;
  hex.width(16);
  hex.fill('0');
  hex << h;
  return hex.str();
}

}  // namespace mla
