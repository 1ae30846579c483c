#include "lginet/cli/commands.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>

#include "lginet/cli/synth.hpp"
#include "lginet/errors.hpp"
#include "lginet/eval/ablation.hpp"
#include "lginet/graphs/dataset.hpp"
#include "lginet/graphs/graph_io.hpp"
#include "lginet/model/gradient_check.hpp"
#include "lginet/training/checkpoint.hpp"
#include "lginet/training/trainer.hpp"

namespace lginet {

namespace fs = std::filesystem;

namespace {

// Flags shared by the subcommands that build or train a model.
struct CommonFlags {
  std::string config;
  std::string preset = "desk";
  std::optional<std::uint64_t> seed;
  std::string variant;
  std::string ablation;
  std::optional<int> precision;
};

void add_model_flags(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--config", f.config, "Flat key = value config file")->check(CLI::ExistingFile);
  cmd->add_option("--preset", f.preset, "Base settings")->check(CLI::IsMember({"desk", "paper"}));
  cmd->add_option("--seed", f.seed, "Run seed (LGINET_SEED takes precedence)");
  cmd->add_option("--variant", f.variant, "CGMP variant")->check(CLI::IsMember({"gate", "mlp", "mha"}));
  cmd->add_option("--ablation", f.ablation, "Ablation name or full");
  cmd->add_option("--precision", f.precision, "Arithmetic precision")->check(CLI::IsMember({32, 64}));
}

template <typename T>
std::optional<T> parse_unsigned(std::string_view text) {
  T v{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) return std::nullopt;
  return v;
}

std::optional<std::uint64_t> env_seed() {
  const char* raw = std::getenv("LGINET_SEED");
  if (raw == nullptr || *raw == '\0') return std::nullopt;
  const auto v = parse_unsigned<std::uint64_t>(raw);
  if (!v) throw ConfigError(std::string("LGINET_SEED: '") + raw + "' is not a non-negative integer");
  return v;
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag, std::uint64_t fallback) {
  if (auto env = env_seed()) return *env;
  return flag.value_or(fallback);
}

RunConfig resolve_run_config(const CommonFlags& f, RunConfig base) {
  RunConfig rc = f.config.empty() ? base : load_run_config(f.config, base);
  if (!f.variant.empty()) rc.model.cgmp_variant = parse_cgmp_variant(f.variant);
  if (!f.ablation.empty()) rc.model.ablation = parse_ablation(f.ablation);
  if (f.precision) rc.train.precision = *f.precision;
  rc.train.seed = resolve_seed(f.seed, rc.train.seed);
  rc.model.validate();
  rc.train.validate();
  return rc;
}

fs::path output_dir(const std::string& out) {
  const fs::path dir = out.empty() ? fs::path(".") : fs::path(out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw FormatError("cannot create " + dir.string() + ": " + ec.message());
  return dir;
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw FormatError("cannot write " + path.string());
  f << text;
}

std::vector<ParseSample> require_data(const std::string& path) {
  if (path.empty()) throw ConfigError("--data is required");
  return load_samples(path);
}

std::vector<std::string> node_names(const ParseSample& s, const LGIG& g) {
  std::vector<std::string> names(g.n());
  for (std::size_t i = 0; i < g.n(); ++i) {
    if (i == g.tau()) {
      std::string a;
      for (std::size_t t = s.aspect_begin; t < s.aspect_end; ++t) a += (a.empty() ? "" : " ") + s.tokens[t];
      names[i] = a;
    } else {
      names[i] = s.tokens[original_index(i, s.aspect_begin, s.aspect_end)];
    }
  }
  return names;
}

// --- subcommands -----------------------------------------------------------

struct SynthFlags {
  SynthOptions options;
  std::optional<std::uint64_t> seed;
  std::string out;
};

int cmd_synth(const SynthFlags& f, std::ostream& out) {
  SynthOptions o = f.options;
  o.seed = resolve_seed(f.seed, 0);
  const auto samples = synthesize(o);
  const fs::path path = output_dir(f.out) / "synth.jsonl";
  save_jsonl(path, samples);
  out << "wrote " << samples.size() << " samples to " << path.string() << '\n';
  return kExitOk;
}

struct GraphFlags {
  std::string data;
  std::string out;
  std::string mode = "o2o";
  std::string aspect;
  int max_bucket = kDefaultMaxBucket;
  bool dot = false;
};

int cmd_build_graph(const GraphFlags& f, std::ostream& out) {
  auto samples = require_data(f.data);
  if (!f.aspect.empty()) {
    // CoNLL-U carries no aspect; one span applies to every sentence.
    const std::string_view spec = f.aspect;
    const auto colon = spec.find(':');
    const auto b = parse_unsigned<std::size_t>(spec.substr(0, colon));
    const auto e = colon == std::string_view::npos ? std::nullopt : parse_unsigned<std::size_t>(spec.substr(colon + 1));
    if (!b || !e) throw ConfigError("--aspect expects START:END");
    for (ParseSample& s : samples) {
      s.aspect_begin = *b;
      s.aspect_end = *e;
    }
  }
  const InteractiveMode mode = parse_interactive_mode(f.mode);
  const auto vocab = build_relation_vocab(samples, f.max_bucket);
  const fs::path dir = output_dir(f.out);
  std::string lines;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const LGIG g = build_lgig(samples[i], mode, vocab, f.max_bucket);
    lines += lgig_to_json(g).dump() + '\n';
    if (f.dot) {
      std::ostringstream name;
      name << "graph_" << std::setw(4) << std::setfill('0') << i << ".dot";
      write_file(dir / name.str(), lgig_to_dot(g, node_names(samples[i], g)));
    }
  }
  write_file(dir / "graphs.jsonl", lines);
  out << "wrote " << samples.size() << " graphs to " << (dir / "graphs.jsonl").string() << '\n';
  return kExitOk;
}

struct TrainFlags {
  CommonFlags common;
  std::string data;
  std::string out;
  bool quiet = false;
};

int cmd_train(const TrainFlags& f, std::ostream& out) {
  const RunConfig rc = resolve_run_config(f.common, preset(f.common.preset));
  const auto samples = require_data(f.data);
  const fs::path dir = output_dir(f.out);
  const TrainResult r = train(rc, samples, [&](const EpochRecord& e, const DigNet&) {
    if (!f.quiet) out << "epoch " << e.epoch << " loss " << e.loss << " acc " << e.acc << '\n';
    return true;
  });
  const ArchiveDtype dtype = rc.train.precision == 32 ? ArchiveDtype::kF32 : ArchiveDtype::kF64;
  save_checkpoint(dir / "model.bin", r.model, dtype);
  save_history(dir / "history.json", r.history);
  write_file(dir / "config.txt", format_run_config(rc));
  out << "saved " << (dir / "model.bin").string() << " (" << r.model.params().parameter_count() << " parameters)\n";
  return kExitOk;
}

struct EvalFlags {
  std::string checkpoint;
  std::string data;
  std::string out;
};

int cmd_eval(const EvalFlags& f, std::ostream& out) {
  const DigNet model = load_checkpoint(f.checkpoint);
  const auto samples = require_data(f.data);
  const EvalResult e = evaluate(model, samples);
  const ConfusionMatrix cm = confusion_matrix(e.preds, e.golds, kNumClasses);
  nlohmann::ordered_json confusion = nlohmann::ordered_json::array();
  for (std::size_t g = 0; g < cm.n_classes; ++g) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (std::size_t p = 0; p < cm.n_classes; ++p) row.push_back(cm.at(g, p));
    confusion.push_back(row);
  }
  const nlohmann::ordered_json doc{{"n", samples.size()}, {"acc", e.acc}, {"f1", e.f1}, {"confusion", confusion}};
  const std::string text = doc.dump(2) + '\n';
  if (!f.out.empty()) write_file(output_dir(f.out) / "metrics.json", text);
  out << text;
  return kExitOk;
}

struct GradFlags {
  CommonFlags common;
  bool all = false;
  std::size_t nodes = 6;
  std::size_t coords = 0;
};

int cmd_gradcheck(const GradFlags& f, std::ostream& out) {
  RunConfig base;
  base.model = gradcheck_model_config();
  const RunConfig rc = resolve_run_config(f.common, base);
  std::vector<ModelConfig> configs;
  if (f.all) {
    for (CgmpVariant v : all_cgmp_variants())
      for (Ablation a : all_ablations()) {
        ModelConfig c = rc.model;
        c.cgmp_variant = v;
        c.ablation = a;
        configs.push_back(c);
      }
  } else {
    configs.push_back(rc.model);
  }
  ModelGradCheckOptions opts;
  opts.n_nodes = f.nodes;
  opts.seed = rc.train.seed;
  opts.max_coords_per_param = f.coords;
  double worst = 0.0;
  for (const ModelConfig& c : configs) {
    const GradCheckResult r = check_model_gradients(c, opts);
    worst = std::max(worst, r.max_rel_error);
    out << to_string(c.cgmp_variant) << ' ' << variant_label(c.ablation) << " max_rel_error " << std::scientific
        << std::setprecision(3) << r.max_rel_error << std::defaultfloat << " worst " << r.worst_param << '['
        << r.worst_index << "] over " << r.coords_checked << " coords\n";
  }
  const bool ok = worst < kGradcheckTolerance;
  out << (ok ? "PASS" : "FAIL") << " max_rel_error " << std::scientific << std::setprecision(3) << worst
      << std::defaultfloat << " (tolerance 1e-4)\n";
  return ok ? kExitOk : kExitGradcheck;
}

struct AblateFlags {
  CommonFlags common;
  std::string data;
  std::string test;
  std::string out;
  std::string sweep = "all";
  double holdout = 0.25;
};

int cmd_ablate(const AblateFlags& f, std::ostream& out) {
  const RunConfig rc = resolve_run_config(f.common, preset(f.common.preset));
  auto train_set = require_data(f.data);
  std::vector<ParseSample> test_set;
  if (!f.test.empty()) {
    test_set = load_samples(f.test);
  } else {
    const auto n_test = static_cast<std::size_t>(static_cast<double>(train_set.size()) * f.holdout);
    if (n_test == 0 || n_test >= train_set.size()) throw ConfigError("--holdout leaves an empty split");
    test_set.assign(train_set.end() - static_cast<std::ptrdiff_t>(n_test), train_set.end());
    train_set.resize(train_set.size() - n_test);
  }
  std::vector<MetricsRow> rows;
  auto append = [&](std::vector<MetricsRow> more) { rows.insert(rows.end(), more.begin(), more.end()); };
  if (f.sweep == "all" || f.sweep == "ablations") append(ablation_suite(rc, train_set, test_set));
  if (f.sweep == "all" || f.sweep == "lgi")
    append(layer_sweep(rc, SweepAxis::kLgiLayers, {1, 2, 3, 4, 5, 6}, train_set, test_set));
  if (f.sweep == "all" || f.sweep == "gcn")
    append(layer_sweep(rc, SweepAxis::kGcnLayers, {1, 2, 3, 4, 5}, train_set, test_set));
  std::ostringstream csv;
  write_csv(csv, rows);
  write_file(output_dir(f.out) / "ablation.csv", csv.str());
  out << format_table(rows);
  return kExitOk;
}

}  // namespace

ModelConfig gradcheck_model_config() {
  ModelConfig c;
  c.d_embed = 4;
  c.d_hidden = 8;
  c.d_rel = 4;
  c.n_heads_rel = 2;
  c.n_heads_mha = 2;
  return c;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Local-global interactive graph network for aspect-level sentiment"};
  app.name("lginet");
  app.require_subcommand(1);

  SynthFlags synth;
  auto* c_synth = app.add_subcommand("synth-data", "Generate a seeded synthetic corpus");
  c_synth->add_option("--n", synth.options.n_samples, "Number of samples")->capture_default_str();
  c_synth->add_option("--seed", synth.seed, "Generator seed (LGINET_SEED takes precedence)");
  c_synth->add_option("--distance", synth.options.polarity_distance, "Aspect to polarity word hops")
      ->capture_default_str();
  c_synth->add_option("--negation", synth.options.negation_rate, "Probability of a negator on each polarity word")
      ->capture_default_str();
  c_synth->add_flag("!--no-distractor", synth.options.distractor, "Omit the farther polarity word");
  c_synth->add_option("--out", synth.out, "Output directory");

  GraphFlags graph;
  auto* c_graph = app.add_subcommand("build-graph", "Build LGIG JSON (and optional DOT) from parses");
  c_graph->add_option("--data", graph.data, "JSONL or CoNLL-U input")->required();
  c_graph->add_option("--out", graph.out, "Output directory");
  c_graph->add_option("--mode", graph.mode, "Interactive edges")->check(CLI::IsMember({"o2o", "o2a"}));
  c_graph->add_option("--aspect", graph.aspect, "Aspect span START:END for every sentence");
  c_graph->add_option("--max-bucket", graph.max_bucket, "Distance bucket cap")->capture_default_str();
  c_graph->add_flag("--dot", graph.dot, "Also write one Graphviz file per sample");

  TrainFlags train_f;
  auto* c_train = app.add_subcommand("train", "Train and write a checkpoint plus history");
  add_model_flags(c_train, train_f.common);
  c_train->add_option("--data", train_f.data, "Training data")->required();
  c_train->add_option("--out", train_f.out, "Output directory");
  c_train->add_flag("--quiet", train_f.quiet, "No per-epoch lines");

  EvalFlags eval_f;
  auto* c_eval = app.add_subcommand("eval", "Score a checkpoint on labelled data");
  c_eval->add_option("--checkpoint", eval_f.checkpoint, "Archive written by train")->required();
  c_eval->add_option("--data", eval_f.data, "Evaluation data")->required();
  c_eval->add_option("--out", eval_f.out, "Directory for metrics.json");

  GradFlags grad;
  auto* c_grad = app.add_subcommand("gradcheck", "Compare analytic and numeric gradients");
  add_model_flags(c_grad, grad.common);
  c_grad->add_flag("--all", grad.all, "Every variant and ablation");
  c_grad->add_option("--nodes", grad.nodes, "Graph size")->capture_default_str();
  c_grad->add_option("--coords", grad.coords, "Sampled coordinates per parameter (0 = all)")->capture_default_str();

  AblateFlags ablate;
  auto* c_ablate = app.add_subcommand("ablate", "Ablation variants and layer-count sweeps");
  add_model_flags(c_ablate, ablate.common);
  c_ablate->add_option("--data", ablate.data, "Training data")->required();
  c_ablate->add_option("--test", ablate.test, "Held-out data (default: tail of --data)");
  c_ablate->add_option("--holdout", ablate.holdout, "Held-out fraction without --test")->capture_default_str();
  c_ablate->add_option("--out", ablate.out, "Directory for ablation.csv");
  c_ablate->add_option("--sweep", ablate.sweep, "Which rows")->check(CLI::IsMember({"all", "ablations", "lgi", "gcn"}));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitContract;
  }

  try {
    if (c_synth->parsed()) return cmd_synth(synth, out);
    if (c_graph->parsed()) return cmd_build_graph(graph, out);
    if (c_train->parsed()) return cmd_train(train_f, out);
    if (c_eval->parsed()) return cmd_eval(eval_f, out);
    if (c_grad->parsed()) return cmd_gradcheck(grad, out);
    if (c_ablate->parsed()) return cmd_ablate(ablate, out);
  } catch (const FormatError& e) {
    err << "error: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const DataError& e) {
    err << "error: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitContract;
  } catch (const ContractError& e) {
    err << "error: " << e.what() << '\n';
    return kExitContract;
  } catch (const NumericError& e) {
    err << "error: " << e.what() << '\n';
    return kExitContract;
  }
  return kExitContract;
}

}  // namespace lginet
