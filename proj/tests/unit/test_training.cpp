#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <limits>
#include <random>
#include <string>

#include "lginet/cli/synth.hpp"
#include "lginet/errors.hpp"
#include "lginet/graphs/syntax_graph.hpp"
#include "lginet/numcore/archive.hpp"
#include "lginet/training/checkpoint.hpp"
#include "lginet/training/optimizer.hpp"
#include "lginet/training/trainer.hpp"
#include "support/model_fixtures.hpp"

using namespace lginet;
using lginet::testing::tiny_config;

namespace {

std::vector<ParseSample> synth_corpus(std::size_t n, std::uint64_t seed) {
  SynthOptions o;
  o.n_samples = n;
  o.seed = seed;
  return synthesize(o);
}

RunConfig small_run(std::uint64_t seed, std::size_t epochs) {
  RunConfig rc;
  rc.model = tiny_config(CgmpVariant::kMlp);
  rc.train.epochs = epochs;
  rc.train.seed = seed;
  return rc;
}

// Scalar Adam with decoupled decay, written out longhand.
template <typename Grad>
double adamw_scalar(double w, double lr, double wd, std::size_t steps, Grad grad) {
  const double b1 = 0.9, b2 = 0.999, eps = 1e-8;
  double m = 0.0, v = 0.0;
  for (std::size_t t = 1; t <= steps; ++t) {
    const double g = grad(w);
    w -= lr * wd * w;
    m = b1 * m + (1 - b1) * g;
    v = b2 * v + (1 - b2) * g * g;
    const double mh = m / (1 - std::pow(b1, static_cast<double>(t)));
    const double vh = v / (1 - std::pow(b2, static_cast<double>(t)));
    w -= lr * mh / (std::sqrt(vh) + eps);
  }
  return w;
}

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() / ("lginet_test_" + std::to_string(std::random_device{}()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
};

bool same_bits(const Tensor& a, const Tensor& b) {
  return a.shape() == b.shape() && std::ranges::equal(a.data(), b.data());
}

}  // namespace

TEST_CASE("adamw matches a longhand scalar implementation on w^2") {
  ParamStore store;
  store.add("w", Tensor::vector({1.0}));
  AdamW opt({.lr = 0.1});
  for (int t = 0; t < 25; ++t) {
    Tensor& w = store.get("w");
    store.zero_grad();
    w.mutable_grad()[0] = 2.0 * w.at(0);
    opt.step(store);
  }
  CHECK(opt.steps() == 25);
  const double expect = adamw_scalar(1.0, 0.1, 0.0, 25, [](double w) { return 2.0 * w; });
  CHECK(store.get("w").at(0) == doctest::Approx(expect).epsilon(1e-14));

  // First step moves by lr in the gradient sign.
  ParamStore one;
  one.add("w", Tensor::vector({1.0}));
  one.get("w").mutable_grad()[0] = 2.0;
  AdamW({.lr = 0.1}).step(one);
  CHECK(one.get("w").at(0) == doctest::Approx(0.9).epsilon(1e-9));
}

TEST_CASE("adamw with zero gradient only decays") {
  ParamStore store;
  store.add("w", Tensor::vector({2.0, -3.0}));
  AdamW opt({.lr = 0.01, .weight_decay = 0.5});
  for (int t = 0; t < 10; ++t) {
    store.zero_grad();
    opt.step(store);
  }
  const double factor = std::pow(1.0 - 0.01 * 0.5, 10);
  CHECK(store.get("w").at(0) == doctest::Approx(2.0 * factor).epsilon(1e-14));
  CHECK(store.get("w").at(1) == doctest::Approx(-3.0 * factor).epsilon(1e-14));

  ParamStore still;
  still.add("w", Tensor::vector({2.0, -3.0}));
  AdamW plain({.lr = 0.01});
  plain.step(still);  // no gradient buffer at all
  CHECK(still.get("w").at(0) == 2.0);
  CHECK(still.get("w").at(1) == -3.0);
}

TEST_CASE("adamw rejects non-finite gradients before touching anything") {
  ParamStore store;
  store.add("first", Tensor::vector({1.0}));
  store.add("broken", Tensor::vector({1.0, 1.0}));
  store.get("first").mutable_grad()[0] = 1.0;
  store.get("broken").mutable_grad()[1] = std::numeric_limits<double>::quiet_NaN();
  AdamW opt({});
  try {
    opt.step(store);
    FAIL("expected NumericError");
  } catch (const NumericError& e) {
    CHECK(std::string(e.what()).find("'broken'") != std::string::npos);
  }
  CHECK(store.get("first").at(0) == 1.0);
  CHECK(opt.steps() == 0);
}

TEST_CASE("zero learning rate leaves the model unchanged") {
  const auto data = synth_corpus(12, 3);
  RunConfig rc = small_run(5, 3);
  rc.train.lr = 0.0;
  const DigNet before = init_model(rc.model, data, Rng(rc.train.seed).fork(1).next_u64());
  const TrainResult after = train(rc, data);
  CHECK(encode_archive(before.params()) == encode_archive(after.model.params()));
  REQUIRE(after.history.size() == 3);
  // Same parameters each epoch; only the summation order differs.
  CHECK(after.history[0].loss == doctest::Approx(after.history[2].loss).epsilon(1e-12));
}

TEST_CASE("desk preset overfits a small synthetic corpus") {
  const auto data = synth_corpus(32, 11);
  for (CgmpVariant v : all_cgmp_variants()) {
    CAPTURE(to_string(v));
    RunConfig rc = preset("desk");
    rc.model.cgmp_variant = v;
    rc.train.seed = 7;
    const TrainResult r = train(rc, data, [](const EpochRecord& e, const DigNet&) { return e.acc < 1.0; });
    CHECK(r.history.back().acc == 1.0);
    CHECK(r.history.size() < 200);
  }
}

TEST_CASE("full-batch loss is non-increasing after warm-up") {
  const auto data = synth_corpus(16, 2);
  RunConfig rc = small_run(1, 40);
  rc.train.batch_size = data.size();
  rc.train.lr = 3e-3;
  const TrainResult r = train(rc, data);
  for (std::size_t e = 5; e < r.history.size(); ++e) {
    CAPTURE(e);
    CHECK(r.history[e].loss <= r.history[e - 1].loss + 1e-3);
  }
  CHECK(r.history.back().loss < r.history.front().loss);
}

TEST_CASE("training is bitwise reproducible from the seed") {
  const auto data = synth_corpus(16, 4);
  for (CgmpVariant v : all_cgmp_variants()) {
    CAPTURE(to_string(v));
    RunConfig rc = small_run(9, 3);
    rc.model.cgmp_variant = v;
    rc.model.dropout_enc = 0.1;
    rc.model.dropout_other = 0.3;
    const TrainResult a = train(rc, data);
    const TrainResult b = train(rc, data);
    CHECK(encode_archive(a.model.params()) == encode_archive(b.model.params()));
    CHECK(a.history == b.history);
    rc.train.seed = 10;
    CHECK(encode_archive(train(rc, data).model.params()) != encode_archive(a.model.params()));
  }
}

TEST_CASE("single precision training keeps parameters float-representable") {
  const auto data = synth_corpus(8, 6);
  RunConfig rc = small_run(2, 2);
  rc.train.precision = 32;
  const TrainResult r = train(rc, data);
  for (const auto& [name, t] : r.model.params())
    for (double v : t.data()) REQUIRE(static_cast<double>(static_cast<float>(v)) == v);
  const ParamStore back = decode_archive(encode_archive(r.model.params(), ArchiveDtype::kF32));
  CHECK(encode_archive(back) == encode_archive(r.model.params()));
}

TEST_CASE("invalid labels and empty data are rejected") {
  auto data = synth_corpus(4, 1);
  data[2].label = -1;
  CHECK_THROWS_AS(train(small_run(0, 1), data), DataError);
  CHECK_THROWS_AS(train(small_run(0, 1), {}), ConfigError);
  RunConfig bad = small_run(0, 1);
  bad.train.batch_size = 0;
  CHECK_THROWS_AS(train(bad, synth_corpus(4, 1)), ConfigError);
}

TEST_CASE("checkpoint round trip preserves predictions bit for bit") {
  TempDir dir;
  const auto data = synth_corpus(12, 8);
  RunConfig rc = small_run(3, 2);
  rc.model.cgmp_variant = CgmpVariant::kMha;
  const TrainResult r = train(rc, data);
  const auto path = dir.path / "model.bin";
  save_checkpoint(path, r.model);
  CHECK(std::filesystem::exists(sidecar_path(path)));

  const DigNet loaded = load_checkpoint(path);
  CHECK(loaded.config() == r.model.config());
  CHECK(loaded.words() == r.model.words());
  CHECK(encode_archive(loaded.params()) == encode_archive(r.model.params()));
  for (const ParseSample& s : data) {
    const ForwardResult a = r.model.forward(r.model.prepare(s));
    const ForwardResult b = loaded.forward(loaded.prepare(s));
    CHECK(same_bits(a.probs, b.probs));
    CHECK(a.predicted == b.predicted);
  }
}

TEST_CASE("checkpoint errors surface as format errors") {
  TempDir dir;
  const auto data = synth_corpus(6, 8);
  const TrainResult a = train(small_run(3, 1), data);
  const auto path = dir.path / "a.bin";
  save_checkpoint(path, a.model);

  CHECK_THROWS_AS(load_checkpoint(dir.path / "missing.bin"), FormatError);

  // Sidecar for a different architecture.
  RunConfig other = small_run(3, 1);
  other.model.cgmp_variant = CgmpVariant::kGate;
  const auto b_path = dir.path / "b.bin";
  save_checkpoint(b_path, train(other, data).model);
  std::filesystem::copy_file(sidecar_path(b_path), sidecar_path(path), std::filesystem::copy_options::overwrite_existing);
  CHECK_THROWS_AS(load_checkpoint(path), FormatError);
}

TEST_CASE("history serializes to json and back") {
  const History h{{1, 1.25, 0.5}, {2, 0.75, 0.625}};
  const auto doc = history_to_json(h);
  CHECK(doc.dump() == R"([{"epoch":1,"loss":1.25,"acc":0.5},{"epoch":2,"loss":0.75,"acc":0.625}])");
  CHECK(history_from_json(nlohmann::json::parse(doc.dump())) == h);
  CHECK_THROWS_AS(history_from_json(nlohmann::json::object()), FormatError);
  CHECK_THROWS_AS(history_from_json(nlohmann::json::parse(R"([{"epoch":1}])")), FormatError);
}

TEST_CASE("run config parsing") {
  const RunConfig rc = parse_run_config("# comment\nlr = 0.01\n\ncgmp_variant = mha\nL_lgi=3\n");
  CHECK(rc.train.lr == 0.01);
  CHECK(rc.model.cgmp_variant == CgmpVariant::kMha);
  CHECK(rc.model.L_lgi == 3);
  CHECK(rc.model.d_hidden == ModelConfig{}.d_hidden);

  try {
    parse_run_config("lr = 0.1\n\nbogus = 1\n");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    CHECK(std::string(e.what()).find("bogus") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_run_config("lr = fast\n"), ConfigError);
  CHECK_THROWS_AS(parse_run_config("epochs = -2\n"), ConfigError);
  CHECK_THROWS_AS(parse_run_config("lr 0.1\n"), ConfigError);

  for (const char* name : {"desk", "paper"}) {
    const RunConfig p = preset(name);
    CHECK(parse_run_config(format_run_config(p)) == p);
  }
  CHECK(preset("paper").model.d_hidden == 768);
  CHECK(preset("paper").model.d_rel == 300);
  CHECK(preset("desk") == RunConfig{});
  CHECK_THROWS_AS(preset("huge"), ConfigError);
}

TEST_CASE("synthetic corpus is deterministic and places the polarity word") {
  SynthOptions o;
  o.n_samples = 50;
  o.seed = 21;
  const auto a = synthesize(o);
  const auto b = synthesize(o);
  CHECK(a == b);
  const auto& lexicon = polarity_lexicon();
  for (const ParseSample& s : a) {
    const auto graph = build_syntax_graph(s);
    const auto dist = aspect_distances(graph);
    const auto& cls = lexicon[static_cast<std::size_t>(s.label)];
    bool found = false;
    for (std::size_t i = 0; i < graph.n; ++i) {
      if (i == graph.tau) continue;
      const std::string& word = s.tokens[original_index(i, s.aspect_begin, s.aspect_end)];
      if (dist[i] == 3 && std::ranges::find(cls, word) != cls.end()) found = true;
    }
    CHECK(found);
  }
  o.negation_rate = 2.0;
  CHECK_THROWS_AS(synthesize(o), ConfigError);
}
