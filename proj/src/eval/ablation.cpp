#include "lginet/eval/ablation.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

#include "lginet/errors.hpp"
#include "lginet/training/trainer.hpp"

namespace lginet {

EvalResult evaluate(const DigNet& model, const std::vector<ParseSample>& samples) {
  EvalResult r;
  r.preds.reserve(samples.size());
  r.golds.reserve(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const ParseSample& s = samples[i];
    if (s.label < 0 || s.label >= kNumClasses) throw DataError("eval sample " + std::to_string(i) + " has no valid label");
    r.preds.push_back(model.predict(model.prepare(s)));
    r.golds.push_back(static_cast<std::size_t>(s.label));
  }
  r.acc = accuracy(r.preds, r.golds);
  r.f1 = macro_f1(r.preds, r.golds);
  return r;
}

MetricsRow run_variant(const std::string& label, const RunConfig& config, const std::vector<ParseSample>& train_set,
                       const std::vector<ParseSample>& test_set) {
  const TrainResult trained = train(config, train_set);
  const EvalResult e = evaluate(trained.model, test_set);
  return {label, e.acc, e.f1, trained.model.params().parameter_count(), config.train.seed};
}

std::string variant_label(Ablation ablation) { return ablation == Ablation::kNone ? "full" : to_string(ablation); }

MetricsRow run_ablation(const RunConfig& base, const std::string& variant, const std::vector<ParseSample>& train_set,
                        const std::vector<ParseSample>& test_set) {
  RunConfig cfg = base;
  cfg.model.ablation = parse_ablation(variant);
  return run_variant(variant_label(cfg.model.ablation), cfg, train_set, test_set);
}

std::vector<MetricsRow> ablation_suite(const RunConfig& base, const std::vector<ParseSample>& train_set,
                                       const std::vector<ParseSample>& test_set) {
  std::vector<MetricsRow> rows;
  for (Ablation a : all_ablations()) rows.push_back(run_ablation(base, variant_label(a), train_set, test_set));
  return rows;
}

std::vector<MetricsRow> layer_sweep(const RunConfig& base, SweepAxis axis, const std::vector<std::size_t>& values,
                                    const std::vector<ParseSample>& train_set,
                                    const std::vector<ParseSample>& test_set) {
  std::vector<MetricsRow> rows;
  for (std::size_t v : values) {
    RunConfig cfg = base;
    cfg.model.ablation = Ablation::kNone;
    std::string label;
    if (axis == SweepAxis::kLgiLayers) {
      cfg.model.L_lgi = v;
      label = "L_lgi=" + std::to_string(v);
    } else {
      cfg.model.L_gcn = v;
      label = "L_gcn=" + std::to_string(v);
    }
    rows.push_back(run_variant(label, cfg, train_set, test_set));
  }
  return rows;
}

void write_csv(std::ostream& out, const std::vector<MetricsRow>& rows) {
  std::ostringstream body;
  body << "variant,acc,f1,params,seed\n" << std::fixed << std::setprecision(6);
  for (const MetricsRow& r : rows)
    body << r.variant << ',' << r.acc << ',' << r.f1 << ',' << r.param_count << ',' << r.seed << '\n';
  out << body.str();
}

std::string format_table(const std::vector<MetricsRow>& rows) {
  int width = 7;
  for (const MetricsRow& r : rows) width = std::max(width, static_cast<int>(r.variant.size()));
  std::ostringstream out;
  out << std::left << std::setw(width) << "variant" << std::right << "  " << std::setw(7) << "acc" << "  "
      << std::setw(7) << "f1" << "  " << std::setw(10) << "params" << "  " << std::setw(6) << "seed" << '\n';
  out << std::fixed << std::setprecision(4);
  for (const MetricsRow& r : rows) {
    out << std::left << std::setw(width) << r.variant << std::right << "  " << std::setw(7) << r.acc << "  "
        << std::setw(7) << r.f1 << "  " << std::setw(10) << r.param_count << "  " << std::setw(6) << r.seed << '\n';
  }
  return out.str();
}

}  // namespace lginet
