// Regenerates the committed inputs under data/: the seeded commutator
// corpus, sample elements, P-matrices, grid and module descriptions.
// Output bytes are deterministic for a fixed seed.
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "mla/sweeps.hpp"

using namespace mla;

namespace {

void write_file(const std::filesystem::path& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << bytes;
  std::cout << path.string() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"regenerate committed data files"};
  std::string dir = "data";
  std::uint64_t seed = 20240901;
  int count = 200;
  app.add_option("--dir", dir, "output directory")->capture_default_str();
  app.add_option("--seed", seed)->capture_default_str();
  app.add_option("--count", count, "corpus size")->capture_default_str();
  CLI11_PARSE(app, argc, argv);

  std::filesystem::create_directories(dir);
  std::filesystem::path root(dir);

  auto entries = random_corpus(seed, count);
  write_file(root / "commutator_corpus.json", dump_json(corpus_json(seed, entries)));

  int case1 = 0, case2 = 0;
  for (const CorpusEntry& e : entries) {
    PbwContext U(e.z.algebra(), e.z.loop_rank());
    (analyze(U, e.z).case_id == 1 ? case1 : case2)++;
  }
  std::cout << "corpus: " << entries.size() << " entries, case I " << case1 << ", case II "
            << case2 << "\n";

  const PbwElement* sample = nullptr;
  for (const CorpusEntry& e : entries)
    if (e.z.algebra()->name() == "A1" && e.z.loop_rank() == 2) {
      sample = &e.z;
      break;
    }
  if (!sample) throw std::runtime_error("no A1 rank-2 corpus entry to sample");
  write_file(root / "z_sample.json",
             dump_json(pbw_element_json(*sample->algebra(), 2, *sample)));
  write_file(root / "z_bad.json", "{\"k\": 2, \"terms\": [\n");

  {
    auto R = RootSystemData::build('A', 1);
    Chev h = R->cartan(0);
    Chev e = R->root_vector(R->simple_root(0));
    Root neg = R->simple_root(0);
    for (int& c : neg.c) c = -c;
    Chev f = R->root_vector(neg);
    (void)h;

    LoopElement a(R, 2);
    a.add(loop_gen(e, MultiIndex{{0, -1}}), rat_from_string("-3/2"));
    a.add(central_gen(0, 2), Rat(1));
    LoopElement b(R, 2);
    b.add(loop_gen(f, MultiIndex{{0, 1}}), Rat(1));
    write_file(root / "loop_a.json", dump_json(loop_element_json(a)));
    write_file(root / "loop_b.json", dump_json(loop_element_json(b)));
  }

  {
    auto R = RootSystemData::build('A', 1);
    write_file(root / "pmatrix_identity_a1_p2.json",
               dump_json(pmatrix_json(PMatrix::identity(R, 2))));

    PMatrix P(R, 2);
    P.set(Weight{{0}}, Weight{{0}}, 1);
    P.set(Weight{{1}}, Weight{{1}}, 1);
    P.set(Weight{{2}}, Weight{{2}}, 1);
    P.set(Weight{{0}}, Weight{{2}}, 1);
    P.set_complete_box(Weight{{0}}, Weight{{2}});
    write_file(root / "pmatrix_a1_p2_box.json", dump_json(pmatrix_json(P)));
  }

  {
    Json grid;
    grid["span"] = 1;
    grid["max_vec_depth"] = 1;
    write_file(root / "sugawara_grid.json", dump_json(grid));

    // pin the case vectors to concrete keys of the committed k2 module:
    // the vacuum over the base top and two depth-1 neighbors
    auto R = RootSystemData::build('A', 1);
    AlgebraConfig cfg{R, 2, 2};
    auto base = TowerModule::induce(cfg, std::make_shared<WeylModule>(R, Weight{{0}}),
                                    TruncationBox{2, 0}, 0, true);
    auto M = TowerModule::induce(cfg, base, TruncationBox{2, 1});
    Chev h = R->cartan(0);
    Root neg = R->simple_root(0);
    for (int& c : neg.c) c = -c;
    Chev f = R->root_vector(neg);
    int vtop = M->index_of(TowerKey{{PbwMonomial{}, PbwMonomial{}}, 0});
    int vf = M->index_of(
        TowerKey{{PbwMonomial{}, PbwMonomial{{{loop_gen(f, MultiIndex{{0, -1}}), 1}}}}, 0});
    int vh = M->index_of(
        TowerKey{{PbwMonomial{}, PbwMonomial{{{loop_gen(h, MultiIndex{{0, -1}}), 1}}}}, 0});
    if (vtop < 0 || vf < 0 || vh < 0) throw std::runtime_error("expected keys missing");
    const int vecs[3] = {vtop, vf, vh};

    Json cases = Json::array();
    const int powers[][2] = {{0, 1},  {0, -2}, {1, -1}, {-1, 1}, {1, 2},
                             {2, -2}, {-1, -1}, {1, 0},  {-2, 1}};
    int i = 0;
    for (const auto& pw : powers) {
      Json cj;
      cj["x"] = i % 3 == 0 ? Json{{"cartan", 1}}
                           : Json{{"root", Json::array({i % 3 == 1 ? 1 : -1})}};
      cj["power"] = Json::array({pw[0], pw[1]});
      cj["vec"] = vecs[i % 3];
      cases.push_back(std::move(cj));
      ++i;
    }
    Json doc;
    doc["cases"] = std::move(cases);
    write_file(root / "sugawara_cases_k2.json", dump_json(doc));
  }

  {
    Json m;
    m["alg"] = "A1";
    m["k"] = 1;
    m["p"] = 2;
    m["lambda"] = Json::array({0});
    m["levels"] = Json::array({Json{{"depth", 3}, {"lateral", 0}, {"shift", 0},
                                    {"quotient", false}}});
    write_file(root / "module_a1_k1_n3.json", dump_json(m));

    m["levels"] = Json::array({Json{{"depth", 2}, {"lateral", 0}, {"shift", 0},
                                    {"quotient", true}}});
    write_file(root / "module_a1_k1_q.json", dump_json(m));

    m["k"] = 2;
    m["levels"] = Json::array({Json{{"depth", 2}, {"lateral", 0}, {"shift", 0},
                                    {"quotient", true}},
                               Json{{"depth", 2}, {"lateral", 1}, {"shift", 0},
                                    {"quotient", false}}});
    write_file(root / "module_a1_k2.json", dump_json(m));

    m["levels"] = Json::array({Json{{"depth", 1}, {"lateral", 0}, {"shift", 0},
                                    {"quotient", true}},
                               Json{{"depth", 1}, {"lateral", 1}, {"shift", 0},
                                    {"quotient", true}}});
    write_file(root / "module_a1_k2_q.json", dump_json(m));
  }

  return 0;
}
