#include "mla/sweeps.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <sstream>

namespace mla {

namespace {

// bounded draw straight off the engine; uniform_int_distribution is not
// pinned down by the standard, and corpus bytes must never drift
long draw(std::mt19937_64& rng, long lo, long hi) {
  return lo + (long)(rng() % (std::uint64_t)(hi - lo + 1));
}

Rat make_rat(long num, long den) {
  Rat q(num, den);
  q.canonicalize();
  return q;
}

std::string hex64(std::uint64_t h) {
  std::ostringstream os;
  os << std::hex;
  os.width(16);
  os.fill('0');
  os << h;
  return os.str();
}

}  // namespace

std::vector<CorpusEntry> random_corpus(std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  RootSystemPtr algs[2] = {RootSystemData::build('A', 1), RootSystemData::build('A', 2)};

  std::vector<CorpusEntry> out;
  out.reserve(count);
  for (int idx = 0; idx < count; ++idx) {
    const RootSystemPtr& R = algs[draw(rng, 0, 1)];
    int k = (int)draw(rng, 2, 3);
    bool cartan_only = idx % 3 == 2;

    PbwElement z;
    for (;;) {
      z = PbwElement(R, k);
      long words = draw(rng, 1, 4);
      for (long w = 0; w < words; ++w) {
        long len = draw(rng, 1, 3);
        std::vector<LoopGen> word;
        for (long f = 0; f < len; ++f) {
          Chev x{(int)draw(rng, 0, (cartan_only ? R->rank() : R->dim()) - 1)};
          MultiIndex n;
          n.e.assign(k, 0);
          for (int i = 0; i + 1 < k; ++i) n.e[i] = (int)draw(rng, -3, 3);
          n.e[k - 1] = (int)draw(rng, -3, -1);
          word.push_back(loop_gen(x, n));
        }
        std::sort(word.begin(), word.end());
        long num = draw(rng, 1, 6) * (draw(rng, 0, 1) ? 1 : -1);
        long den = draw(rng, 1, 3);
        z.add(monomial_from_word_sorted(std::move(word)), make_rat(num, den));
      }
      if (!z.is_zero() && z.degree() >= 1) break;
    }

    std::ostringstream id;
    id << "z";
    id.width(4);
    id.fill('0');
    id << idx + 1;
    out.push_back(CorpusEntry{id.str(), std::move(z)});
  }
  return out;
}

Json corpus_json(std::uint64_t seed, const std::vector<CorpusEntry>& entries) {
  Json j;
  j["seed"] = seed;
  j["count"] = (int)entries.size();
  Json arr = Json::array();
  for (const CorpusEntry& e : entries) {
    Json ej;
    ej["id"] = e.id;
    ej["alg"] = e.z.algebra()->name();
    ej["element"] = pbw_element_json(*e.z.algebra(), e.z.loop_rank(), e.z);
    arr.push_back(std::move(ej));
  }
  j["entries"] = std::move(arr);
  return j;
}

std::vector<CorpusEntry> corpus_parse(const Json& j) {
  std::map<std::string, RootSystemPtr> cache;
  std::vector<CorpusEntry> out;
  for (const auto& ej : j.at("entries")) {
    std::string alg = ej.at("alg").get<std::string>();
    auto it = cache.find(alg);
    if (it == cache.end()) it = cache.emplace(alg, RootSystemData::from_name(alg)).first;
    out.push_back(CorpusEntry{ej.at("id").get<std::string>(),
                              pbw_element_parse(it->second, ej.at("element"))});
  }
  return out;
}

namespace {

CorpusResult run_corpus_case(const CorpusEntry& e, int window) {
  CorpusResult res;
  res.id = e.id;
  try {
    PbwContext U(e.z.algebra(), e.z.loop_rank());
    WitnessCertificate c = analyze(U, e.z);
    res.case_id = c.case_id;
    res.degree = c.degree;
    res.p0 = c.p0;
    res.predicted = c.predicted;
    res.r_lo = (int)c.p0;
    res.r_hi = (int)c.p0 + window;
    VerifyReport rep = verify(U, e.z, c, res.r_lo, res.r_hi);
    res.ok = rep.ok;
  } catch (const std::exception& ex) {
    res.ok = false;
    res.error = ex.what();
  }
  return res;
}

}  // namespace

std::vector<CorpusResult> corpus_sweep(const std::vector<CorpusEntry>& entries,
                                       int window, int jobs) {
  std::vector<CorpusResult> out(entries.size());
  int n = (int)entries.size();
#ifdef MLA_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(std::max(1, jobs))
#endif
  for (int i = 0; i < n; ++i) out[i] = run_corpus_case(entries[i], window);
  (void)jobs;
  return out;
}

std::vector<CorpusResult> corpus_sweep_serial(const std::vector<CorpusEntry>& entries,
                                              int window) {
  std::vector<CorpusResult> out;
  out.reserve(entries.size());
  for (const CorpusEntry& e : entries) out.push_back(run_corpus_case(e, window));
  return out;
}

std::uint64_t corpus_checksum(const std::vector<CorpusResult>& results) {
  std::uint64_t h = 14695981039346656037ULL;
  for (const CorpusResult& r : results) {
    std::ostringstream os;
    os << r.id << "|" << r.ok << "|" << r.case_id << "|" << r.degree << "|" << r.p0 << "|"
       << rat_to_string(r.predicted) << "|" << r.r_lo << ".." << r.r_hi << "|" << r.error
       << ";";
    h = fnv1a(h, os.str());
  }
  return h;
}

Json corpus_report_json(const std::vector<CorpusResult>& results) {
  Json j;
  int passed = 0;
  Json arr = Json::array();
  for (const CorpusResult& r : results) {
    Json rj;
    rj["id"] = r.id;
    rj["ok"] = r.ok;
    if (r.case_id) rj["case"] = r.case_id == 1 ? "I" : "II";
    rj["degree"] = r.degree;
    rj["p0"] = r.p0;
    rj["window"] = Json::array({r.r_lo, r.r_hi});
    rj["predicted"] = rat_to_string(r.predicted);
    if (!r.error.empty()) rj["error"] = r.error;
    arr.push_back(std::move(rj));
    if (r.ok) ++passed;
  }
  j["total"] = (int)results.size();
  j["passed"] = passed;
  j["checksum"] = hex64(corpus_checksum(results));
  j["results"] = std::move(arr);
  return j;
}

std::vector<EnergyCase> energy_grid(const TowerModule& m, int span, int max_vec_depth) {
  int k = m.level();
  const RootSystemData& R = *m.algebra();
  int top_shift = m.shifts().back();

  std::set<MultiIndex> ns;
  for (int a = -span; a <= span; ++a) {
    if (k == 1) {
      ns.insert(delta_index(1, 0, a));
      continue;
    }
    for (int j = 0; j + 1 < k; ++j)
      for (int b = -span; b <= span; ++b)
        ns.insert(delta_index(k, j, b) + delta_index(k, k - 1, a));
  }

  std::vector<EnergyCase> out;
  for (int i = 0; i < m.dim(); ++i) {
    if (top_shift - m.d_tuple(i).back() > max_vec_depth) continue;
    for (int id = 0; id < R.dim(); ++id)
      for (const MultiIndex& n : ns) out.push_back(EnergyCase{Chev{id}, n, i});
  }
  return out;
}

namespace {

EnergyResult run_energy_case(const TowerModule& m, const EnergyCase& c) {
  EnergyResult res;
  try {
    SparseVec v{{c.vec, Rat(1)}};
    SugawaraCase sc = sugawara_case(m, c.x, c.n, v);
    res.overflow = sc.overflow;
    res.classical = sc.classical;
    res.ok = sc.ok;
    res.lhs_hash = sparsevec_hash(sc.lhs);
    res.rhs_hash = sparsevec_hash(sc.rhs);
  } catch (const std::exception& ex) {
    res.error = ex.what();
  }
  return res;
}

}  // namespace

std::vector<EnergyResult> energy_sweep(const TowerModule& m,
                                       const std::vector<EnergyCase>& cases, int jobs) {
  std::vector<EnergyResult> out(cases.size());
  int n = (int)cases.size();
#ifdef MLA_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(std::max(1, jobs))
#endif
  for (int i = 0; i < n; ++i) out[i] = run_energy_case(m, cases[i]);
  (void)jobs;
  return out;
}

std::vector<EnergyResult> energy_sweep_serial(const TowerModule& m,
                                              const std::vector<EnergyCase>& cases) {
  std::vector<EnergyResult> out;
  out.reserve(cases.size());
  for (const EnergyCase& c : cases) out.push_back(run_energy_case(m, c));
  return out;
}

std::uint64_t energy_checksum(const std::vector<EnergyResult>& results) {
  std::uint64_t h = 14695981039346656037ULL;
  for (const EnergyResult& r : results) {
    std::ostringstream os;
    os << r.overflow << "|" << r.classical << "|" << r.ok << "|" << r.lhs_hash << "|"
       << r.rhs_hash << "|" << r.error << ";";
    h = fnv1a(h, os.str());
  }
  return h;
}

Json energy_report_json(const TowerModule& m, const std::vector<EnergyCase>& cases,
                        const std::vector<EnergyResult>& results) {
  Json j;
  j["alg"] = m.algebra()->name();
  j["k"] = m.level();
  j["dim"] = m.dim();
  int checked = 0, passed = 0, overflow = 0;
  Json arr = Json::array();
  for (size_t i = 0; i < cases.size(); ++i) {
    const EnergyCase& c = cases[i];
    const EnergyResult& r = results.at(i);
    Json cj;
    cj["x"] = chev_json(*m.algebra(), c.x);
    cj["power"] = Json(c.n.e);
    cj["vec"] = c.vec;
    cj["overflow"] = r.overflow;
    cj["classical"] = r.classical;
    if (!r.overflow) {
      cj["ok"] = r.ok;
      cj["lhs"] = r.lhs_hash;
      cj["rhs"] = r.rhs_hash;
    }
    if (!r.error.empty()) cj["error"] = r.error;
    arr.push_back(std::move(cj));
    if (r.overflow) ++overflow;
    if (!r.overflow && r.error.empty()) {
      ++checked;
      if (r.ok) ++passed;
    }
  }
  j["total"] = (int)cases.size();
  j["checked"] = checked;
  j["passed"] = passed;
  j["overflow"] = overflow;
  j["checksum"] = hex64(energy_checksum(results));
  j["cases"] = std::move(arr);
  return j;
}

}  // namespace mla
