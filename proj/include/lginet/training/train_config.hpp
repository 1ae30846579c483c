#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "lginet/model/config.hpp"

namespace lginet {

struct TrainConfig {
  double lr = 1e-3;
  double weight_decay = 0.0;
  std::size_t batch_size = 8;
  std::size_t epochs = 200;
  std::uint64_t seed = 0;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double adam_eps = 1e-8;
  int precision = 64;  // 32 or 64

  // Throws ConfigError naming the offending field.
  void validate() const;
  bool operator==(const TrainConfig&) const = default;
};

// Model and optimizer settings read from one flat config file.
struct RunConfig {
  ModelConfig model;
  TrainConfig train;
  bool operator==(const RunConfig&) const = default;
};

// "desk" (default) or "paper". The paper preset carries one dataset's learning
// rate and weight decay; set lr / weight_decay in a config file for others.
RunConfig preset(const std::string& name);

// Applies `key = value` lines on top of `base`. '#' starts a comment; blank
// lines are ignored; unknown keys and malformed values throw ConfigError
// with the line number.
RunConfig parse_run_config(std::string_view text, RunConfig base = {});
RunConfig load_run_config(const std::filesystem::path& path, RunConfig base = {});

// Every key understood by parse_run_config, one per line, in file order.
std::string format_run_config(const RunConfig& config);

}  // namespace lginet
