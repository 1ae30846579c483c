#include "lginet/training/trainer.hpp"

#include <fstream>
#include <numeric>

#include "lginet/errors.hpp"
#include "lginet/graphs/relation_graph.hpp"
#include "lginet/numcore/ops.hpp"
#include "lginet/training/optimizer.hpp"

namespace lginet {

namespace {

// Stream ids forked from the run seed.
constexpr std::uint64_t kInitStream = 1;
constexpr std::uint64_t kShuffleStream = 2;
constexpr std::uint64_t kDropoutStream = 3;

void round_to_single(ParamStore& store) {
  for (auto& [name, t] : store)
    for (double& v : t.mutable_data()) v = static_cast<double>(static_cast<float>(v));
}

}  // namespace

nlohmann::ordered_json history_to_json(const History& history) {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const EpochRecord& r : history) out.push_back({{"epoch", r.epoch}, {"loss", r.loss}, {"acc", r.acc}});
  return out;
}

History history_from_json(const nlohmann::json& doc) {
  if (!doc.is_array()) throw FormatError("history: expected a JSON array");
  History out;
  try {
    for (const auto& row : doc)
      out.push_back({row.at("epoch").get<std::size_t>(), row.at("loss").get<double>(), row.at("acc").get<double>()});
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("history: ") + e.what());
  }
  return out;
}

void save_history(const std::filesystem::path& path, const History& history) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write " + path.string());
  out << history_to_json(history).dump(2) << '\n';
}

Tensor sample_loss(const DigNet& model, const ModelInput& input, const ForwardOptions& options) {
  if (input.label < 0 || input.label >= kNumClasses) {
    throw DataError("sample has no valid label (got " + std::to_string(input.label) + ")");
  }
  return ops::cross_entropy(model.forward(input, options).probs, static_cast<std::size_t>(input.label));
}

DigNet init_model(const ModelConfig& config, const std::vector<ParseSample>& train_set, std::uint64_t seed) {
  if (train_set.empty()) throw ConfigError("training set is empty");
  return DigNet(config, build_word_vocab(train_set), build_relation_vocab(train_set, config.max_bucket), seed);
}

History fit(DigNet& model, const std::vector<ModelInput>& data, const TrainConfig& config, const EpochCallback& on_epoch) {
  config.validate();
  if (data.empty()) throw ConfigError("training set is empty");
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (data[i].label < 0 || data[i].label >= kNumClasses) {
      throw DataError("training sample " + std::to_string(i) + " has no valid label");
    }
  }

  const bool single = config.precision == 32;
  PrecisionScope precision(single ? Precision::kFloat32 : Precision::kFloat64);
  if (single) round_to_single(model.params());

  AdamW optimizer({config.lr, config.beta1, config.beta2, config.adam_eps, config.weight_decay});
  Rng root(config.seed);
  Rng shuffle_rng = root.fork(kShuffleStream);
  Rng dropout_rng = root.fork(kDropoutStream);
  ParamStore& params = model.params();

  std::vector<std::size_t> order(data.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  History history;
  for (std::size_t epoch = 1; epoch <= config.epochs; ++epoch) {
    shuffle_rng.shuffle(order);
    double loss_sum = 0.0;
    for (std::size_t start = 0; start < order.size(); start += config.batch_size) {
      const std::size_t stop = std::min(order.size(), start + config.batch_size);
      const double inv_batch = 1.0 / static_cast<double>(stop - start);
      params.zero_grad();
      for (std::size_t k = start; k < stop; ++k) {
        Tape tape;
        TapeScope scope(tape);
        const Tensor loss = sample_loss(model, data[order[k]], {true, &dropout_rng});
        loss_sum += loss.item();
        tape.backward(ops::scale(loss, inv_batch));
      }
      optimizer.step(params);
      if (single) round_to_single(params);
    }

    std::size_t correct = 0;
    for (const ModelInput& input : data)
      if (model.predict(input) == static_cast<std::size_t>(input.label)) ++correct;
    const EpochRecord record{epoch, loss_sum / static_cast<double>(data.size()),
                             static_cast<double>(correct) / static_cast<double>(data.size())};
    history.push_back(record);
    if (on_epoch && !on_epoch(record, model)) break;
  }
  return history;
}

TrainResult train(const RunConfig& config, const std::vector<ParseSample>& train_set, const EpochCallback& on_epoch) {
  config.train.validate();
  Rng root(config.train.seed);
  DigNet model = init_model(config.model, train_set, root.fork(kInitStream).next_u64());
  const std::vector<ModelInput> inputs = model.prepare(train_set);
  History history = fit(model, inputs, config.train, on_epoch);
  return {std::move(model), std::move(history)};
}

}  // namespace lginet
