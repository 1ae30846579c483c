// Acceptance checks. Run with no arguments for all of them, or name some.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "lginet/cli/commands.hpp"
#include "lginet/cli/synth.hpp"
#include "lginet/errors.hpp"
#include "lginet/eval/ablation.hpp"
#include "lginet/eval/metrics.hpp"
#include "lginet/graphs/dataset.hpp"
#include "lginet/graphs/lgig.hpp"
#include "lginet/graphs/syntax_graph.hpp"
#include "lginet/model/gradient_check.hpp"
#include "lginet/numcore/archive.hpp"
#include "lginet/training/checkpoint.hpp"
#include "lginet/training/trainer.hpp"
#include "support/fixtures.hpp"

using namespace lginet;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// Random trees of at most 12 tokens: merged edges against a set-union
// reference, distances against Floyd-Warshall on both the merged and the
// original tree.
Outcome graph_oracle() {
  const auto t0 = Clock::now();
  Rng rng(12345);
  int mismatches = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const ParseSample s = testing::random_tree_sample(rng, 12);
    const SyntaxGraph g = build_syntax_graph(s);
    const auto ref = testing::brute_force_merge(s);
    bool ok = g.n == ref.n && g.tau == ref.tau && g.adj.symmetric();
    std::set<std::pair<std::size_t, std::size_t>> got;
    for (std::size_t i = 0; ok && i < g.n; ++i) {
      ok = ok && g.adj(i, i) == 0;
      for (std::size_t j = i + 1; j < g.n; ++j)
        if (g.adj(i, j)) got.insert({i, j});
    }
    ok = ok && got == ref.edges;
    if (ok) {
      const auto dist = aspect_distances(g);
      const auto fw = testing::floyd_warshall(g.n, [&](std::size_t i, std::size_t j) { return g.adj(i, j) != 0; });
      const BinaryMatrix base = build_base_adjacency(s);
      const auto fw0 = testing::floyd_warshall(s.size(), [&](std::size_t i, std::size_t j) { return base(i, j) != 0; });
      for (std::size_t node = 0; node < g.n; ++node) {
        ok = ok && dist[node] == fw[g.tau][node];
        if (node == g.tau) continue;
        const std::size_t token = original_index(node, s.aspect_begin, s.aspect_end);
        int best = 1 << 20;
        for (std::size_t a = s.aspect_begin; a < s.aspect_end; ++a) best = std::min(best, fw0[a][token]);
        ok = ok && dist[node] == best;
      }
    }
    mismatches += !ok;
  }
  const double t = seconds_since(t0);
  return {mismatches == 0 && t < 5.0, fmt("200 trees, %d mismatches, %.3fs (limit 5s)", mismatches, t)};
}

Outcome dosa_fixture() {
  const ParseSample s = testing::dosa_sentence();
  const LGIG g = build_lgig(s, InteractiveMode::kOneToOne);
  const auto dist = aspect_distances(g.syntax);
  // Both tokens precede the aspect, so their merged index equals the token index.
  const std::size_t cheap = merged_index(1, s.aspect_begin, s.aspect_end);
  const std::size_t but = merged_index(6, s.aspect_begin, s.aspect_end);
  const std::string l_cheap = g.relation.vocab->name(g.relation.rel[cheap]);
  const std::string l_but = g.relation.vocab->name(g.relation.rel[but]);
  const bool ok = s.tokens[1] == "cheap" && s.tokens[6] == "but" && dist[cheap] == 3 && dist[but] == 3 &&
                  l_cheap == "3:con" && l_but == "3:con";
  return {ok, fmt("cheap: %d hops '%s', but: %d hops '%s'", dist[cheap], l_cheap.c_str(), dist[but], l_but.c_str())};
}

Outcome gradient_checks() {
  const auto t0 = Clock::now();
  double worst = 0.0;
  std::string worst_where;
  std::size_t coords = 0;
  for (CgmpVariant v : all_cgmp_variants()) {
    for (Ablation a : all_ablations()) {
      ModelConfig c = gradcheck_model_config();
      c.cgmp_variant = v;
      c.ablation = a;
      ModelGradCheckOptions opts;
      opts.n_nodes = 6;
      const GradCheckResult r = check_model_gradients(c, opts);
      coords += r.coords_checked;
      if (r.max_rel_error >= worst) {
        worst = r.max_rel_error;
        worst_where = to_string(v) + "/" + variant_label(a) + " " + r.worst_param;
      }
    }
  }
  const double t = seconds_since(t0);
  return {worst < 1e-4 && t < 120.0, fmt("21 configs, %zu coords, max rel err %.2e at %s, %.1fs (limit 120s)", coords,
                                         worst, worst_where.c_str(), t)};
}

Outcome overfit() {
  SynthOptions so;
  so.n_samples = 32;
  so.seed = 7;
  const auto data = synthesize(so);
  bool ok = true;
  std::string detail;
  for (CgmpVariant v : all_cgmp_variants()) {
    RunConfig rc = preset("desk");
    rc.model.cgmp_variant = v;
    rc.train.seed = 7;
    const auto t0 = Clock::now();
    const TrainResult r = train(rc, data, [](const EpochRecord& e, const DigNet&) { return e.acc < 1.0; });
    const double t = seconds_since(t0);
    const bool pass = r.history.back().acc == 1.0 && r.history.size() <= 200 && t < 60.0;
    ok = ok && pass;
    detail += fmt("%s%s acc %.3f at epoch %zu in %.1fs", detail.empty() ? "" : "; ", to_string(v).c_str(),
                  r.history.back().acc, r.history.size(), t);
  }
  return {ok, detail + " (limits 200 epochs, 60s each)"};
}

// Held-out accuracy of the full model against the no-LGI ablation, five seeds.
Outcome lgi_signal() {
  constexpr std::size_t kTrain = 384;
  int wins = 0;
  std::string detail;
  const auto t0 = Clock::now();
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    SynthOptions so;
    so.n_samples = 512;
    so.seed = 1000 + seed;
    so.polarity_distance = 3;
    const auto data = synthesize(so);
    const std::vector<ParseSample> tr(data.begin(), data.begin() + kTrain), te(data.begin() + kTrain, data.end());
    RunConfig rc = preset("desk");
    rc.model.L_gcn = 2;
    rc.train.epochs = 20;
    rc.train.seed = seed;
    const MetricsRow full = run_ablation(rc, "full", tr, te);
    const MetricsRow no_lgi = run_ablation(rc, "no_lgi", tr, te);
    wins += full.acc >= no_lgi.acc;
    detail += fmt("%s%.3f/%.3f", detail.empty() ? "" : " ", full.acc, no_lgi.acc);
  }
  return {wins >= 4, fmt("full >= no_lgi on %d/5 seeds (need 4); full/no_lgi acc: %s; %.0fs", wins, detail.c_str(),
                         seconds_since(t0))};
}

// Per-class counts from the raw label lists, F1 = 2tp / (2tp + fp + fn).
double counting_macro_f1(const std::vector<std::size_t>& p, const std::vector<std::size_t>& g, std::size_t k) {
  double sum = 0.0;
  int used = 0;
  for (std::size_t c = 0; c < k; ++c) {
    int tp = 0, fp = 0, fn = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      tp += p[i] == c && g[i] == c;
      fp += p[i] == c && g[i] != c;
      fn += p[i] != c && g[i] == c;
    }
    if (tp + fp + fn == 0) continue;
    sum += 2.0 * tp / (2.0 * tp + fp + fn);
    ++used;
  }
  return sum / used;
}

Outcome metric_oracle() {
  Rng rng(99);
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 1 + rng.index(60);
    std::vector<std::size_t> p(n), g(n);
    for (std::size_t i = 0; i < n; ++i) {
      p[i] = rng.index(3);
      g[i] = rng.index(3);
    }
    worst = std::max(worst, std::abs(macro_f1(p, g) - counting_macro_f1(p, g, 3)));
  }
  return {worst < 1e-12, fmt("1000 cases, max |diff| %.2e (limit 1e-12)", worst)};
}

struct ScratchDir {
  fs::path path = fs::temp_directory_path() / ("lginet_accept_" + std::to_string(std::random_device{}()));
  ScratchDir() { fs::create_directories(path); }
  ~ScratchDir() { fs::remove_all(path); }
};

std::string file_bytes(const fs::path& p) { return read_text_file(p); }

Outcome determinism() {
  ScratchDir dir;
  SynthOptions so;
  so.n_samples = 48;
  so.seed = 5;
  const auto data = synthesize(so);
  RunConfig rc = preset("desk");
  rc.model.dropout_enc = 0.1;
  rc.model.dropout_other = 0.3;
  rc.train.epochs = 5;
  rc.train.seed = 17;
  bool ok = true;
  std::string detail;
  for (CgmpVariant v : all_cgmp_variants()) {
    rc.model.cgmp_variant = v;
    const TrainResult a = train(rc, data);
    const TrainResult b = train(rc, data);
    const fs::path pa = dir.path / (to_string(v) + "_a.bin"), pb = dir.path / (to_string(v) + "_b.bin");
    save_checkpoint(pa, a.model);
    save_checkpoint(pb, b.model);
    const bool same_run = file_bytes(pa) == file_bytes(pb) && a.history == b.history;
    // Archive -> load -> encode reproduces the file exactly, and reloaded predictions match.
    const DigNet loaded = load_checkpoint(pa);
    bool round_trip = encode_archive(loaded.params()) == file_bytes(pa);
    for (const ParseSample& s : data) {
      const Tensor pa_probs = a.model.forward(a.model.prepare(s)).probs;
      const Tensor pl_probs = loaded.forward(loaded.prepare(s)).probs;
      round_trip = round_trip && std::ranges::equal(pa_probs.data(), pl_probs.data());
    }
    ok = ok && same_run && round_trip;
    detail += fmt("%s%s rerun %s, round trip %s", detail.empty() ? "" : "; ", to_string(v).c_str(),
                  same_run ? "identical" : "DIFFERS", round_trip ? "bit-exact" : "DIFFERS");
  }
  return {ok, detail};
}

Outcome ablation_sweeps() {
  ScratchDir dir;
  std::ostringstream out, err;
  const std::string data_dir = (dir.path / "data").string();
  int code = run_cli({"synth-data", "--n", "40", "--seed", "3", "--out", data_dir}, out, err);
  std::ofstream(dir.path / "run.cfg") << "epochs = 2\n";
  if (code == 0) {
    code = run_cli({"ablate", "--data", data_dir + "/synth.jsonl", "--config", (dir.path / "run.cfg").string(), "--out",
                    (dir.path / "out").string()},
                   out, err);
  }
  if (code != 0) return {false, "ablate exited with " + std::to_string(code) + ": " + err.str()};
  std::set<std::string> rows;
  std::ifstream csv(dir.path / "out" / "ablation.csv");
  std::string line;
  std::getline(csv, line);
  const bool header_ok = line == "variant,acc,f1,params,seed";
  while (std::getline(csv, line)) rows.insert(line.substr(0, line.find(',')));
  std::vector<std::string> missing;
  for (int l = 1; l <= 6; ++l)
    if (!rows.count("L_lgi=" + std::to_string(l))) missing.push_back("L_lgi=" + std::to_string(l));
  for (int l = 1; l <= 5; ++l)
    if (!rows.count("L_gcn=" + std::to_string(l))) missing.push_back("L_gcn=" + std::to_string(l));
  for (Ablation a : all_ablations())
    if (!rows.count(variant_label(a))) missing.push_back(variant_label(a));
  std::string m;
  for (const auto& s : missing) m += " " + s;
  return {header_ok && missing.empty(),
          fmt("%zu rows (L_lgi 1..6, L_gcn 1..5, 7 variants)%s%s", rows.size(), missing.empty() ? "" : ", missing:",
              m.c_str())};
}

struct Criterion {
  const char* name;
  Outcome (*run)();
};

const Criterion kCriteria[] = {
    {"graph-oracle", graph_oracle},     {"dosa-fixture", dosa_fixture}, {"gradient-checks", gradient_checks},
    {"overfit", overfit},               {"lgi-signal", lgi_signal},     {"metric-oracle", metric_oracle},
    {"determinism", determinism},       {"ablation-sweeps", ablation_sweeps},
};

}  // namespace

int main(int argc, char** argv) {
  std::vector<const Criterion*> selected;
  for (int i = 1; i < argc; ++i) {
    const std::string want = argv[i];
    const Criterion* hit = nullptr;
    for (std::size_t k = 0; k < std::size(kCriteria); ++k)
      if (want == kCriteria[k].name || want == std::to_string(k + 1)) hit = &kCriteria[k];
    if (!hit) {
      std::fprintf(stderr, "unknown criterion '%s'\n", want.c_str());
      return 2;
    }
    selected.push_back(hit);
  }
  if (selected.empty())
    for (const Criterion& c : kCriteria) selected.push_back(&c);

  int failed = 0;
  for (const Criterion* c : selected) {
    Outcome o;
    try {
      o = c->run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", c->name, o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
