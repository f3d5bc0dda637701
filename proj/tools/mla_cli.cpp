// Command line surface over the library: build, check, verify, report.
// Every run emits one JSON envelope {command, version, config_hash, seed,
// report, pass}; exit 0 iff pass, 1 on failed verification, 2 on usage or
// data errors. Reports are byte-deterministic for fixed inputs and seed.
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "mla/grothendieck.hpp"
#include "mla/module_checks.hpp"
#include "mla/sweeps.hpp"

using namespace mla;

namespace {

constexpr const char* kVersion = "0.1.0";

std::string base_name(const std::string& p) {
  auto i = p.find_last_of('/');
  return i == std::string::npos ? p : p.substr(i + 1);
}

// flag echo embedded in reports; path flags are reduced to basenames so
// report bytes do not depend on where the inputs live
struct Echo {
  std::string text;
  Echo& add(const std::string& flag, const std::string& v) {
    text += " --" + flag + " " + v;
    return *this;
  }
  Echo& add(const std::string& flag, long v) { return add(flag, std::to_string(v)); }
  Echo& path(const std::string& flag, const std::string& v) { return add(flag, base_name(v)); }
};

std::string hex64(std::uint64_t h) {
  std::ostringstream os;
  os << std::hex;
  os.width(16);
  os.fill('0');
  os << h;
  return os.str();
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  try {
    Json j;
    in >> j;
    return j;
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

// module consumers accept either a bare description or a build-module
// envelope wrapping one
Json module_doc(Json j) {
  if (j.contains("report") && j.at("report").contains("levels")) return j.at("report");
  return j;
}

Weight parse_weight_csv(const std::string& s, int rank) {
  std::vector<int> c;
  std::istringstream is(s);
  std::string part;
  while (std::getline(is, part, ',')) c.push_back(std::stoi(part));
  if ((int)c.size() != rank)
    throw std::invalid_argument("weight \"" + s + "\" needs " + std::to_string(rank) +
                                " coordinates");
  return Weight{std::move(c)};
}

std::vector<int> parse_int_csv(const std::string& s) {
  std::vector<int> c;
  std::istringstream is(s);
  std::string part;
  while (std::getline(is, part, ',')) c.push_back(std::stoi(part));
  return c;
}

int emit(const std::string& sub, const Echo& echo, std::uint64_t seed, const Json& report,
         bool pass, const std::string& out_path) {
  Json env;
  env["command"] = sub + echo.text;
  env["version"] = kVersion;
  env["config_hash"] = hex64(fnv1a(sub + echo.text + "|" + std::to_string(seed)));
  env["seed"] = seed;
  env["report"] = report;
  env["pass"] = pass;
  std::string bytes = dump_json(env);
  if (out_path.empty()) {
    std::cout << bytes;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot write " + out_path);
    out << bytes;
  }
  return pass ? 0 : 1;
}

struct CommonFlags {
  std::uint64_t seed = 20240901;
  int jobs = 1;
  std::string out;
};

int run_root_system(const std::string& alg, const CommonFlags& cf) {
  auto R = RootSystemData::from_name(alg);
  Echo echo;
  echo.add("alg", alg);
  return emit("root-system", echo, cf.seed, root_system_json(*R), true, cf.out);
}

int run_bracket(const std::string& alg, int k, const std::string& a_path,
                const std::string& b_path, const CommonFlags& cf) {
  auto R = RootSystemData::from_name(alg);
  LoopElement a = loop_element_parse(R, read_json_file(a_path));
  LoopElement b = loop_element_parse(R, read_json_file(b_path));
  if (a.loop_rank() != k || b.loop_rank() != k)
    throw std::invalid_argument("element loop rank does not match --k");

  Echo echo;
  echo.add("alg", alg).add("k", k).path("a", a_path).path("b", b_path);
  Json report;
  report["a"] = loop_element_json(a);
  report["b"] = loop_element_json(b);
  report["bracket"] = loop_element_json(bracket(a, b));
  report["form"] = rat_to_string(loop_form(a, b));
  return emit("bracket", echo, cf.seed, report, true, cf.out);
}

int run_check_commutator(const std::string& alg, int k, const std::string& z_path,
                         const std::string& corpus_path, int window, const CommonFlags& cf) {
  if (z_path.empty() == corpus_path.empty())
    throw std::invalid_argument("check-commutator needs exactly one of --z or --corpus");

  if (!corpus_path.empty()) {
    auto entries = corpus_parse(read_json_file(corpus_path));
    auto results = corpus_sweep(entries, window, cf.jobs);
    Json report = corpus_report_json(results);
    bool pass = !results.empty() &&
                report.at("passed").get<int>() == report.at("total").get<int>();
    Echo echo;
    echo.path("corpus", corpus_path).add("window", window);
    return emit("check-commutator", echo, cf.seed, report, pass, cf.out);
  }

  if (alg.empty() || k < 2)
    throw std::invalid_argument("--alg and --k (>= 2) are required with --z");
  auto R = RootSystemData::from_name(alg);
  PbwElement z = pbw_element_parse(R, read_json_file(z_path));
  if (z.loop_rank() != k) throw std::invalid_argument("element loop rank does not match --k");

  Echo echo;
  echo.add("alg", alg).add("k", k).path("z", z_path).add("window", window);
  PbwContext U(R, k);
  WitnessCertificate cert = analyze(U, z);
  Json report;
  report["element"] = pbw_element_json(*R, k, z);
  report["certificate"] = certificate_json(*R, k, cert);
  bool pass = false;
  try {
    VerifyReport vr = verify(U, z, cert, (int)cert.p0, (int)cert.p0 + window);
    report["verify"] = verify_report_json(vr);
    pass = vr.ok;
  } catch (const CertificateFalsified& e) {
    report["error"] = e.what();
  }
  return emit("check-commutator", echo, cf.seed, report, pass, cf.out);
}

int run_build_module(const std::string& alg, int k, long p, const std::string& lambda,
                     int depth, int lateral, const std::string& shifts_csv, bool quotient,
                     const CommonFlags& cf) {
  auto R = RootSystemData::from_name(alg);
  AlgebraConfig cfg{R, k, p};
  Weight lam = parse_weight_csv(lambda, R->rank());
  std::vector<int> shifts = shifts_csv.empty() ? std::vector<int>(k, 0)
                                               : parse_int_csv(shifts_csv);
  if ((int)shifts.size() != k)
    throw std::invalid_argument("--shifts needs one value per loop axis");

  auto base = std::make_shared<WeylModule>(R, lam);
  TowerModulePtr M;
  for (int level = 1; level <= k; ++level) {
    TruncationBox box{depth, lateral};
    M = M ? TowerModule::induce(cfg, M, box, shifts[level - 1], quotient, cf.jobs)
          : TowerModule::induce(cfg, base, box, shifts[0], quotient, cf.jobs);
  }

  Echo echo;
  echo.add("alg", alg).add("k", k).add("p", p).add("lambda", lambda);
  echo.add("depth", depth).add("lateral", lateral);
  if (!shifts_csv.empty()) echo.add("shifts", shifts_csv);
  if (quotient) echo.add("quotient", "true");
  return emit("build-module", echo, cf.seed, module_json(*M), true, cf.out);
}

int run_commutant(const std::string& module_path, bool doubled, int expect,
                  const CommonFlags& cf) {
  Json doc = module_doc(read_json_file(module_path));
  TowerModulePtr M = module_from_json(doc, cf.jobs);

  CommutantReport rep;
  if (doubled) {
    Json doc2 = doc;
    int bump = M->box().depth + 1;
    doc2["levels"].back()["shift"] =
        doc2["levels"].back().value("shift", 0) + bump;
    TowerModulePtr M2 = module_from_json(doc2, cf.jobs);
    DirectSumAction sum(M, M2);
    std::vector<LoopGen> gens =
        window_generators(*M->algebra(), M->level(), M->box().lateral, M->box().depth);
    rep = commutant_dimension(sum, gens);
    if (expect < 0) expect = 2;
  } else {
    rep = commutant_dimension(*M);
    if (expect < 0) expect = 1;
  }

  Echo echo;
  echo.path("module", module_path);
  if (doubled) echo.add("doubled", "true");
  echo.add("expect", expect);
  Json report;
  report["dimension"] = rep.dimension;
  report["expected"] = expect;
  report["unknowns"] = rep.unknowns;
  report["equations"] = rep.equations;
  report["families_skipped"] = rep.families_skipped;
  report["doubled"] = doubled;
  return emit("commutant", echo, cf.seed, report, rep.dimension == expect, cf.out);
}

Json shift_action_json(const RootSystemData& R, int k, const ShiftActionReport& sr) {
  Json j;
  j["ok"] = sr.ok;
  j["commutator_nonzero"] = sr.commutator_nonzero;
  j["base_annihilated"] = sr.base_annihilated;
  j["base_legs"] = sr.base_legs;
  j["window"] = Json::array({sr.r_lo, sr.r_hi});
  j["certificate"] = certificate_json(R, k, sr.cert);
  return j;
}

int run_distinguish(const std::string& alg, int k, long p, const std::string& lambda,
                    int depth, int lateral, int radical_depth,
                    const std::vector<std::string>& mus, int shift_span, int target_depth,
                    int target_lateral, int window, const CommonFlags& cf) {
  if (k != 2) throw std::invalid_argument("distinguish implements the two-loop separation");
  if (mus.empty()) throw std::invalid_argument("at least one --mu is required");

  auto R = RootSystemData::from_name(alg);
  AlgebraConfig cfg{R, k, p};
  Weight lam = parse_weight_csv(lambda, R->rank());
  auto V = std::make_shared<WeylModule>(R, lam);
  auto base = TowerModule::induce(cfg, V, TruncationBox{depth, 0}, 0, true, cf.jobs);
  auto M = TowerModule::induce(cfg, base, TruncationBox{depth, lateral}, 0, false, cf.jobs);

  // explicit candidate: lowest root vector at t_k^{-1} over the top of
  // the base
  Root low = M->algebra()->highest_root();
  for (int& c : low.c) c = -c;
  Chev f_low = R->root_vector(low);
  TowerKey vk{{PbwMonomial{}, PbwMonomial{{{loop_gen(f_low, delta_index(2, 1, -1)), 1}}}}, 0};
  int vi = M->index_of(vk);
  if (vi < 0) throw std::invalid_argument("candidate key fell outside the window");
  std::vector<SparseVec> candidates{SparseVec{{vi, Rat(1)}}};

  int radical_candidates = 0;
  if (radical_depth >= 0) {
    for (const auto& [bk, ids] : M->blocks()) {
      if (M->shifts().back() - bk.d.back() != radical_depth) continue;
      auto ker = kernel_basis(M->gram(bk));
      for (const auto& kv : ker) {
        SparseVec v;
        for (size_t i = 0; i < ids.size(); ++i)
          if (!is_zero(kv[i])) v[ids[i]] = kv[i];
        if (!v.empty()) {
          candidates.push_back(std::move(v));
          ++radical_candidates;
        }
      }
    }
  }

  std::vector<TowerModulePtr> targets;
  for (const std::string& mu_s : mus) {
    Weight mu = parse_weight_csv(mu_s, R->rank());
    auto Vt = std::make_shared<WeylModule>(R, mu);
    for (int m = -shift_span; m <= shift_span; ++m)
      for (int n = -shift_span; n <= shift_span; ++n) {
        auto tb = TowerModule::induce(cfg, Vt, TruncationBox{depth, 0}, m, true, cf.jobs);
        targets.push_back(TowerModule::induce(cfg, tb,
                                              TruncationBox{target_depth, target_lateral},
                                              n, true, cf.jobs));
      }
  }

  DistinguishReport dr = distinguishability_check(*M, candidates, targets, window);

  Echo echo;
  echo.add("alg", alg).add("k", k).add("p", p).add("lambda", lambda);
  echo.add("depth", depth).add("lateral", lateral).add("radical-depth", radical_depth);
  std::string mu_echo;
  for (const std::string& m : mus) mu_echo += (mu_echo.empty() ? "" : ";") + m;
  echo.add("mu", mu_echo).add("shift-span", shift_span);
  echo.add("target-depth", target_depth).add("target-lateral", target_lateral);
  echo.add("window", window);

  Json report;
  report["distinguishable"] = dr.distinguishable;
  report["verdict"] = dr.verdict;
  report["window"] = Json::array({dr.r_lo, dr.r_hi});
  report["radical_candidates"] = radical_candidates;
  Json cands = Json::array();
  for (const auto& sr : dr.candidates) cands.push_back(shift_action_json(*R, k, sr));
  report["candidates"] = std::move(cands);
  Json tgts = Json::array();
  for (const auto& t : dr.targets) {
    Json tj;
    tj["mu"] = weight_json(t.mu);
    tj["shifts"] = Json(t.shifts);
    tj["annihilated"] = t.annihilated;
    tj["degree0_dim"] = t.degree0_dim;
    tgts.push_back(std::move(tj));
  }
  report["targets"] = std::move(tgts);
  return emit("distinguish", echo, cf.seed, report, dr.distinguishable, cf.out);
}

int run_sugawara_verify(const std::string& module_path, const std::string& grid_path,
                        const CommonFlags& cf) {
  TowerModulePtr M = module_from_json(module_doc(read_json_file(module_path)), cf.jobs);
  Json grid_doc = read_json_file(grid_path);

  std::vector<EnergyCase> cases;
  if (grid_doc.contains("cases")) {
    for (const auto& cj : grid_doc.at("cases")) {
      EnergyCase c;
      c.x = chev_parse(*M->algebra(), cj.at("x"));
      auto power = cj.at("power");
      c.n.e.clear();
      for (const auto& v : power) c.n.e.push_back(v.get<int>());
      if (c.n.size() != M->level())
        throw std::invalid_argument("grid power length does not match the module");
      c.vec = cj.at("vec").get<int>();
      if (c.vec < 0) c.vec += M->dim();  // negative counts back from the top key
      if (c.vec < 0 || c.vec >= M->dim())
        throw std::invalid_argument("grid vector index out of range");
      cases.push_back(std::move(c));
    }
  } else {
    cases = energy_grid(*M, grid_doc.value("span", 1), grid_doc.value("max_vec_depth", 1));
  }

  auto results = energy_sweep(*M, cases, cf.jobs);
  Json report = energy_report_json(*M, cases, results);
  bool pass = report.at("checked").get<int>() > 0 &&
              report.at("passed").get<int>() == report.at("checked").get<int>();
  for (const auto& r : results)
    if (!r.error.empty()) pass = false;

  Echo echo;
  echo.path("module", module_path).path("grid", grid_path);
  return emit("sugawara-verify", echo, cf.seed, report, pass, cf.out);
}

int run_ek(const std::string& alg, long p, const std::string& lambda,
           const std::string& pmatrix_path, int kmax, const CommonFlags& cf) {
  auto R = RootSystemData::from_name(alg);
  PMatrix P = pmatrix_parse(read_json_file(pmatrix_path));
  if (P.algebra()->name() != R->name() || P.p() != p)
    throw std::invalid_argument("P-matrix file does not match --alg/--p");
  Weight lam = parse_weight_csv(lambda, R->rank());

  Echo echo;
  echo.add("alg", alg).add("p", p).add("lambda", lambda);
  echo.path("pmatrix", pmatrix_path).add("kmax", kmax);

  Json report;
  report["lambda"] = weight_json(lam);
  report["restricted"] = is_restricted(lam, p);
  Json digits = Json::array();
  for (const Weight& d : p_adic_expansion(lam, p)) digits.push_back(weight_json(d));
  report["digits"] = std::move(digits);

  Json evs = Json::array();
  for (int k = 0; k <= kmax; ++k) {
    Json ej;
    ej["k"] = k;
    ej["vector"] = grothendieck_vector_json(ek_vector(k, lam, P));
    evs.push_back(std::move(ej));
  }
  report["e"] = std::move(evs);

  StabilizeResult st = stabilize(lam, P, kmax);
  report["k_stable"] = st.k_stable;
  report["stable_vector"] = grothendieck_vector_json(st.value);
  CharacterPolynomial ch = character_of(*R, st.value);
  report["character"] = character_json(ch);
  report["dim"] = character_dim(ch);
  Json warnings = Json::array();
  for (const std::string& w : P.validate()) warnings.push_back(w);
  report["warnings"] = std::move(warnings);

  return emit("ek", echo, cf.seed, report, st.k_stable >= 1, cf.out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact computations in truncated multi-loop affine algebra modules"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", kVersion);

  CommonFlags cf;
  app.add_option("--seed", cf.seed, "seed echoed into reports")->capture_default_str();
  app.add_option("--jobs", cf.jobs, "parallel workers for library sweeps")
      ->capture_default_str();
  app.add_option("--out", cf.out, "write the report here instead of stdout");

  std::string alg, lambda, a_path, b_path, z_path, corpus_path, module_path, grid_path,
      pmatrix_path, shifts_csv;
  std::vector<std::string> mus;
  int k = 2, depth = 2, lateral = 2, window = 5, expect = -1, kmax = 5;
  int radical_depth = 1, shift_span = 2, target_depth = 1, target_lateral = 1;
  long p = 2;
  bool quotient = false, doubled = false;

  auto* rs = app.add_subcommand("root-system", "structure tables of the finite algebra");
  rs->add_option("--alg", alg, "algebra name, e.g. A1")->required();

  auto* br = app.add_subcommand("bracket", "bracket and pairing of two loop elements");
  br->add_option("--alg", alg)->required();
  br->add_option("--k", k, "loop rank")->required();
  br->add_option("--a", a_path, "left element JSON")->required();
  br->add_option("--b", b_path, "right element JSON")->required();

  auto* cc = app.add_subcommand("check-commutator",
                                "certificate + windowed verification of nonvanishing");
  cc->add_option("--alg", alg);
  cc->add_option("--k", k);
  cc->add_option("--z", z_path, "element JSON");
  cc->add_option("--corpus", corpus_path, "corpus JSON (sweep mode)");
  cc->add_option("--window", window, "r values past p0")->capture_default_str();

  auto* bm = app.add_subcommand("build-module", "box-truncated induced module");
  bm->add_option("--alg", alg)->required();
  bm->add_option("--k", k)->required();
  bm->add_option("--p", p)->required();
  bm->add_option("--lambda", lambda, "highest weight, comma separated")->required();
  bm->add_option("--depth", depth)->required();
  bm->add_option("--lateral", lateral)->required();
  bm->add_option("--shifts", shifts_csv, "grading shift per level, comma separated");
  bm->add_flag("--quotient", quotient, "take the irreducible quotient at every level");

  auto* cm = app.add_subcommand("commutant", "grading-preserving commutant dimension");
  cm->add_option("--module", module_path, "module JSON (description or envelope)")
      ->required();
  cm->add_flag("--doubled", doubled, "direct sum with a shifted copy (negative control)");
  cm->add_option("--expect", expect, "expected dimension (default 1, 2 with --doubled)");

  auto* di = app.add_subcommand("distinguish",
                                "separate induced-module vectors from shifted quotients");
  di->add_option("--alg", alg)->required();
  di->add_option("--k", k)->capture_default_str();
  di->add_option("--p", p)->required();
  di->add_option("--lambda", lambda)->required();
  di->add_option("--depth", depth)->capture_default_str();
  di->add_option("--lateral", lateral)->capture_default_str();
  di->add_option("--radical-depth", radical_depth,
                 "also use form-kernel vectors at this depth (-1 disables)")
      ->capture_default_str();
  di->add_option("--mu", mus, "target highest weight, repeatable")->required();
  di->add_option("--shift-span", shift_span, "targets over shifts in [-span, span]^2")
      ->capture_default_str();
  di->add_option("--target-depth", target_depth)->capture_default_str();
  di->add_option("--target-lateral", target_lateral)->capture_default_str();
  di->add_option("--window", window, "r values past the certificate floor")
      ->capture_default_str();

  auto* sv = app.add_subcommand("sugawara-verify",
                                "energy commutator identity on a module grid");
  sv->add_option("--module", module_path)->required();
  sv->add_option("--grid", grid_path, "grid JSON: {span, max_vec_depth} or {cases}")
      ->required();

  auto* ek = app.add_subcommand("ek", "change-of-basis recursion and stabilization");
  ek->add_option("--alg", alg)->required();
  ek->add_option("--p", p)->required();
  ek->add_option("--lambda", lambda)->required();
  ek->add_option("--pmatrix", pmatrix_path)->required();
  ek->add_option("--kmax", kmax)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (app.got_subcommand(rs)) return run_root_system(alg, cf);
    if (app.got_subcommand(br)) return run_bracket(alg, k, a_path, b_path, cf);
    if (app.got_subcommand(cc))
      return run_check_commutator(alg, k, z_path, corpus_path, window, cf);
    if (app.got_subcommand(bm))
      return run_build_module(alg, k, p, lambda, depth, lateral, shifts_csv, quotient, cf);
    if (app.got_subcommand(cm)) return run_commutant(module_path, doubled, expect, cf);
    if (app.got_subcommand(di))
      return run_distinguish(alg, k, p, lambda, depth, lateral, radical_depth, mus,
                             shift_span, target_depth, target_lateral, window, cf);
    if (app.got_subcommand(sv)) return run_sugawara_verify(module_path, grid_path, cf);
    if (app.got_subcommand(ek)) return run_ek(alg, p, lambda, pmatrix_path, kmax, cf);
  } catch (const data_gap& e) {
    std::cerr << "data gap: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
