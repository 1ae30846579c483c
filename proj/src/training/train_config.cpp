#include "lginet/training/train_config.hpp"

#include <charconv>
#include <functional>
#include <map>
#include <sstream>

#include "lginet/errors.hpp"
#include "lginet/graphs/dataset.hpp"

namespace lginet {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

double parse_double(const std::string& key, const std::string& value) {
  double out = 0.0;
  const char* end = value.data() + value.size();
  auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end) throw ConfigError(key + ": '" + value + "' is not a number");
  return out;
}

std::uint64_t parse_unsigned(const std::string& key, const std::string& value) {
  std::uint64_t out = 0;
  const char* end = value.data() + value.size();
  auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end) throw ConfigError(key + ": '" + value + "' is not a non-negative integer");
  return out;
}

using Setter = std::function<void(RunConfig&, const std::string&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = [] {
    std::map<std::string, Setter> t;
    auto size_field = [](std::size_t ModelConfig::*field) {
      return [field](RunConfig& c, const std::string& k, const std::string& v) {
        c.model.*field = static_cast<std::size_t>(parse_unsigned(k, v));
      };
    };
    t["d_embed"] = size_field(&ModelConfig::d_embed);
    t["d_hidden"] = size_field(&ModelConfig::d_hidden);
    t["d_rel"] = size_field(&ModelConfig::d_rel);
    t["L_lgi"] = size_field(&ModelConfig::L_lgi);
    t["L_gcn"] = size_field(&ModelConfig::L_gcn);
    t["n_heads_rel"] = size_field(&ModelConfig::n_heads_rel);
    t["n_heads_mha"] = size_field(&ModelConfig::n_heads_mha);
    t["cgmp_variant"] = [](RunConfig& c, const std::string&, const std::string& v) {
      c.model.cgmp_variant = parse_cgmp_variant(v);
    };
    t["ablation"] = [](RunConfig& c, const std::string&, const std::string& v) { c.model.ablation = parse_ablation(v); };
    t["dropout_enc"] = [](RunConfig& c, const std::string& k, const std::string& v) {
      c.model.dropout_enc = parse_double(k, v);
    };
    t["dropout_other"] = [](RunConfig& c, const std::string& k, const std::string& v) {
      c.model.dropout_other = parse_double(k, v);
    };
    t["max_bucket"] = [](RunConfig& c, const std::string& k, const std::string& v) {
      c.model.max_bucket = static_cast<int>(parse_unsigned(k, v));
    };
    t["lr"] = [](RunConfig& c, const std::string& k, const std::string& v) { c.train.lr = parse_double(k, v); };
    t["weight_decay"] = [](RunConfig& c, const std::string& k, const std::string& v) {
      c.train.weight_decay = parse_double(k, v);
    };
    t["batch_size"] = [](RunConfig& c, const std::string& k, const std::string& v) {
      c.train.batch_size = static_cast<std::size_t>(parse_unsigned(k, v));
    };
    t["epochs"] = [](RunConfig& c, const std::string& k, const std::string& v) {
      c.train.epochs = static_cast<std::size_t>(parse_unsigned(k, v));
    };
    t["seed"] = [](RunConfig& c, const std::string& k, const std::string& v) { c.train.seed = parse_unsigned(k, v); };
    t["beta1"] = [](RunConfig& c, const std::string& k, const std::string& v) { c.train.beta1 = parse_double(k, v); };
    t["beta2"] = [](RunConfig& c, const std::string& k, const std::string& v) { c.train.beta2 = parse_double(k, v); };
    t["adam_eps"] = [](RunConfig& c, const std::string& k, const std::string& v) {
      c.train.adam_eps = parse_double(k, v);
    };
    t["precision"] = [](RunConfig& c, const std::string& k, const std::string& v) {
      c.train.precision = static_cast<int>(parse_unsigned(k, v));
    };
    return t;
  }();
  return table;
}

}  // namespace

void TrainConfig::validate() const {
  auto require = [](bool ok, const std::string& message) {
    if (!ok) throw ConfigError("train config: " + message);
  };
  require(lr >= 0.0, "lr must not be negative");
  require(weight_decay >= 0.0, "weight_decay must not be negative");
  require(batch_size >= 1, "batch_size must be at least 1");
  require(epochs >= 1, "epochs must be at least 1");
  require(beta1 >= 0.0 && beta1 < 1.0, "beta1 must lie in [0, 1)");
  require(beta2 >= 0.0 && beta2 < 1.0, "beta2 must lie in [0, 1)");
  require(adam_eps > 0.0, "adam_eps must be positive");
  require(precision == 32 || precision == 64, "precision must be 32 or 64");
}

RunConfig preset(const std::string& name) {
  RunConfig c;
  if (name == "desk") return c;
  if (name == "paper") {
    c.model.d_embed = 300;
    c.model.d_hidden = 768;
    c.model.d_rel = 300;
    c.model.dropout_enc = 0.1;
    c.model.dropout_other = 0.3;
    c.train.batch_size = 32;
    c.train.epochs = 30;
    c.train.lr = 1e-5;
    c.train.weight_decay = 0.001;
    return c;
  }
  throw ConfigError("unknown preset '" + name + "' (expected desk or paper)");
}

RunConfig parse_run_config(std::string_view text, RunConfig base) {
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = raw;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    auto it = setters().find(key);
    if (it == setters().end()) throw ConfigError("config line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    if (value.empty()) throw ConfigError("config line " + std::to_string(line_no) + ": empty value for '" + key + "'");
    try {
      it->second(base, key, value);
    } catch (const ConfigError& e) {
      throw ConfigError("config line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return base;
}

RunConfig load_run_config(const std::filesystem::path& path, RunConfig base) {
  return parse_run_config(read_text_file(path), std::move(base));
}

namespace {

// Shortest text that parses back to the same double.
std::string real(double v) {
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

}  // namespace

std::string format_run_config(const RunConfig& c) {
  std::ostringstream out;
  out << "d_embed = " << c.model.d_embed << '\n'
      << "d_hidden = " << c.model.d_hidden << '\n'
      << "d_rel = " << c.model.d_rel << '\n'
      << "L_lgi = " << c.model.L_lgi << '\n'
      << "L_gcn = " << c.model.L_gcn << '\n'
      << "n_heads_rel = " << c.model.n_heads_rel << '\n'
      << "n_heads_mha = " << c.model.n_heads_mha << '\n'
      << "cgmp_variant = " << to_string(c.model.cgmp_variant) << '\n'
      << "ablation = " << to_string(c.model.ablation) << '\n'
      << "dropout_enc = " << real(c.model.dropout_enc) << '\n'
      << "dropout_other = " << real(c.model.dropout_other) << '\n'
      << "max_bucket = " << c.model.max_bucket << '\n'
      << "lr = " << real(c.train.lr) << '\n'
      << "weight_decay = " << real(c.train.weight_decay) << '\n'
      << "batch_size = " << c.train.batch_size << '\n'
      << "epochs = " << c.train.epochs << '\n'
      << "seed = " << c.train.seed << '\n'
      << "beta1 = " << real(c.train.beta1) << '\n'
      << "beta2 = " << real(c.train.beta2) << '\n'
      << "adam_eps = " << real(c.train.adam_eps) << '\n'
      << "precision = " << c.train.precision << '\n';
  return out.str();
}

}  // namespace lginet
