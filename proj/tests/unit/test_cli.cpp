#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "lginet/cli/commands.hpp"
#include "lginet/graphs/dataset.hpp"
#include "lginet/graphs/graph_io.hpp"
#include "lginet/graphs/lgig.hpp"
#include "lginet/graphs/relation_graph.hpp"

using namespace lginet;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

struct Workspace {
  fs::path root;
  Workspace() {
    root = fs::temp_directory_path() / ("lginet_cli_" + std::to_string(std::random_device{}()));
    fs::create_directories(root);
  }
  ~Workspace() { fs::remove_all(root); }
  std::string path(const std::string& name) const { return (root / name).string(); }
  void write(const std::string& name, const std::string& text) const { std::ofstream(root / name) << text; }
};

std::size_t line_count(const fs::path& p) {
  std::ifstream in(p);
  std::size_t n = 0;
  for (std::string line; std::getline(in, line);) ++n;
  return n;
}

const char* const kTinyConfig =
    "d_embed = 4\nd_hidden = 8\nd_rel = 4\nn_heads_rel = 2\nn_heads_mha = 2\nepochs = 2\n";

}  // namespace

TEST_CASE("synth-data is deterministic and honours the seed override") {
  Workspace ws;
  CHECK(cli({"synth-data", "--n", "32", "--seed", "7", "--out", ws.path("a")}).code == 0);
  CHECK(cli({"synth-data", "--n", "32", "--seed", "7", "--out", ws.path("b")}).code == 0);
  CHECK(cli({"synth-data", "--n", "32", "--seed", "8", "--out", ws.path("c")}).code == 0);
  const std::string a = read_text_file(ws.path("a/synth.jsonl"));
  CHECK(a == read_text_file(ws.path("b/synth.jsonl")));
  CHECK(a != read_text_file(ws.path("c/synth.jsonl")));
  CHECK(load_jsonl(ws.path("a/synth.jsonl")).size() == 32);

  ::setenv("LGINET_SEED", "7", 1);
  const Run r = cli({"synth-data", "--n", "32", "--seed", "8", "--out", ws.path("d")});
  ::unsetenv("LGINET_SEED");
  CHECK(r.code == 0);
  CHECK(read_text_file(ws.path("d/synth.jsonl")) == a);
}

TEST_CASE("build-graph output reads back to the in-memory graphs") {
  Workspace ws;
  REQUIRE(cli({"synth-data", "--n", "10", "--seed", "3", "--out", ws.path("d")}).code == 0);
  for (const char* mode : {"o2o", "o2a"}) {
    CAPTURE(mode);
    const Run r = cli({"build-graph", "--data", ws.path("d/synth.jsonl"), "--out", ws.path(mode), "--mode", mode, "--dot"});
    REQUIRE(r.code == 0);
    const auto samples = load_jsonl(ws.path("d/synth.jsonl"));
    const auto vocab = build_relation_vocab(samples, kDefaultMaxBucket);
    std::ifstream in(ws.root / mode / "graphs.jsonl");
    std::size_t i = 0;
    for (std::string line; std::getline(in, line); ++i) {
      REQUIRE(i < samples.size());
      const LGIG expected = build_lgig(samples[i], parse_interactive_mode(mode), vocab);
      CHECK(lgig_from_json(nlohmann::json::parse(line)) == expected);
    }
    CHECK(i == samples.size());
    CHECK(fs::exists(ws.root / mode / "graph_0009.dot"));
  }
}

TEST_CASE("build-graph on a single-token aspect puts tau at the aspect start") {
  Workspace ws;
  ws.write("one.jsonl",
           R"({"tokens":["the","dosa","is","cheap"],"heads":[1,3,3,-1],"deprels":["det","nsubj","cop","root"],"aspect":[1,2],"label":2})"
           "\n");
  REQUIRE(cli({"build-graph", "--data", ws.path("one.jsonl"), "--out", ws.path("g")}).code == 0);
  const auto doc = nlohmann::json::parse(read_text_file(ws.path("g/graphs.jsonl")));
  CHECK(doc.at("tau") == 1);
  CHECK(doc.at("n") == 4);
}

TEST_CASE("build-graph reads CoNLL-U with an explicit aspect span") {
  Workspace ws;
  ws.write("s.conllu",
           "1\tthe\t_\t_\t_\t_\t2\tdet\t_\t_\n"
           "2\tdosa\t_\t_\t_\t_\t4\tnsubj\t_\t_\n"
           "3\tis\t_\t_\t_\t_\t4\tcop\t_\t_\n"
           "4\tcheap\t_\t_\t_\t_\t0\troot\t_\t_\n\n");
  REQUIRE(cli({"build-graph", "--data", ws.path("s.conllu"), "--aspect", "1:2", "--out", ws.path("g")}).code == 0);
  CHECK(nlohmann::json::parse(read_text_file(ws.path("g/graphs.jsonl"))).at("tau") == 1);
  CHECK(cli({"build-graph", "--data", ws.path("s.conllu"), "--aspect", "x", "--out", ws.path("g")}).code == 2);
}

TEST_CASE("train then eval writes checkpoint, history, and metrics") {
  Workspace ws;
  ws.write("tiny.cfg", kTinyConfig);
  REQUIRE(cli({"synth-data", "--n", "12", "--seed", "1", "--out", ws.path("d")}).code == 0);
  const Run t = cli({"train", "--data", ws.path("d/synth.jsonl"), "--config", ws.path("tiny.cfg"), "--variant", "mlp",
                     "--out", ws.path("m"), "--seed", "4"});
  REQUIRE(t.code == 0);
  CHECK(t.out.find("epoch 2 ") != std::string::npos);
  for (const char* f : {"model.bin", "model.bin.json", "history.json", "config.txt"}) CHECK(fs::exists(ws.root / "m" / f));
  CHECK(nlohmann::json::parse(read_text_file(ws.path("m/history.json"))).size() == 2);
  CHECK(read_text_file(ws.path("m/config.txt")).find("seed = 4") != std::string::npos);

  const Run e = cli({"eval", "--checkpoint", ws.path("m/model.bin"), "--data", ws.path("d/synth.jsonl"), "--out", ws.path("m")});
  REQUIRE(e.code == 0);
  const auto metrics = nlohmann::json::parse(read_text_file(ws.path("m/metrics.json")));
  CHECK(metrics.at("n") == 12);
  CHECK(metrics.at("acc").get<double>() >= 0.0);
  CHECK(metrics.at("confusion").size() == 3);

  // Same seed, same bytes.
  REQUIRE(cli({"train", "--data", ws.path("d/synth.jsonl"), "--config", ws.path("tiny.cfg"), "--variant", "mlp",
               "--out", ws.path("m2"), "--seed", "4", "--quiet"}).code == 0);
  CHECK(read_text_file(ws.path("m/model.bin")) == read_text_file(ws.path("m2/model.bin")));
  CHECK(read_text_file(ws.path("m/history.json")) == read_text_file(ws.path("m2/history.json")));
}

TEST_CASE("exit codes") {
  Workspace ws;
  CHECK(cli({}).code == 2);
  CHECK(cli({"frobnicate"}).code == 2);
  CHECK(cli({"--help"}).code == 0);
  CHECK(cli({"train", "--data", ws.path("missing.jsonl")}).code == 1);
  ws.write("bad.jsonl", "{\"tokens\": [\"a\"]\n");
  const Run bad = cli({"train", "--data", ws.path("bad.jsonl")});
  CHECK(bad.code == 1);
  CHECK(bad.err.find("line 1") != std::string::npos);
  ws.write("unknown.cfg", "lr = 0.1\nwidth = 3\n");
  REQUIRE(cli({"synth-data", "--n", "4", "--out", ws.path("d")}).code == 0);
  const Run cfg = cli({"train", "--data", ws.path("d/synth.jsonl"), "--config", ws.path("unknown.cfg")});
  CHECK(cfg.code == 2);
  CHECK(cfg.err.find("line 2") != std::string::npos);
  CHECK(cli({"train", "--data", ws.path("d/synth.jsonl"), "--ablation", "no_everything"}).code == 2);
  CHECK(cli({"gradcheck", "--precision", "16"}).code == 2);
}

TEST_CASE("gradcheck passes for the attention variant") {
  const Run r = cli({"gradcheck", "--variant", "mha"});
  CHECK(r.code == 0);
  CHECK(r.out.find("PASS") != std::string::npos);
}

TEST_CASE("ablate writes every variant and sweep row") {
  Workspace ws;
  ws.write("tiny.cfg", std::string(kTinyConfig) + "epochs = 1\n");
  REQUIRE(cli({"synth-data", "--n", "16", "--seed", "2", "--out", ws.path("d")}).code == 0);
  const Run r = cli({"ablate", "--data", ws.path("d/synth.jsonl"), "--config", ws.path("tiny.cfg"), "--out", ws.path("a")});
  REQUIRE(r.code == 0);
  CHECK(line_count(ws.root / "a" / "ablation.csv") == 1 + 7 + 6 + 5);
  CHECK(r.out.find("L_gcn=5") != std::string::npos);
  CHECK(r.out.find("relation_decoder") != std::string::npos);
}
