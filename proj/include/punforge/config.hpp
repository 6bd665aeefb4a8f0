#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace punforge {

// Everything a subcommand can be configured with. Defaults are the
// published settings of the generation and scoring pipeline.
struct RunConfig {
  std::string subcommand;

  std::string corpus;
  std::string lm;
  std::string skipgram;
  std::string wordnet;
  std::string pairs;
  std::string ratings;
  std::string scores;
  std::string input;
  std::string out;
  std::string vocab_out;
  std::string text_out;

  int order = 4;
  std::size_t dim = 300;
  std::size_t d1 = 5;
  std::size_t d2 = 10;
  std::size_t window = 2;
  std::size_t topic_k = 100;
  double threshold = 0.3;
  std::size_t pool = 500;
  std::size_t keep = 100;
  std::size_t max_outputs = 10;
  std::size_t epochs = 15;
  std::size_t negatives = 5;
  double step_size = 0.025;
  std::uint64_t min_count = 1;
  std::uint64_t seed = 1;
  std::size_t permutations = 10000;
  double min_corr = 0.2;
  int verbosity = 1;

  bool line_mode = false;
  bool pretagged = false;
  bool rerank_surprisal = false;
  bool absolute_position = false;
  bool swap_only = false;
};

// Raised for values that cannot be parsed into their field.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ConfigField {
  std::string name;  // JSON key; flags use '-' for '_', env vars PUNGEN_<UPPER>
  bool is_flag = false;
  std::function<void(RunConfig&, const std::string&)> set_text;
  std::function<void(RunConfig&, const nlohmann::json&)> set_json;
};

const std::vector<ConfigField>& config_fields();
const ConfigField* find_field(std::string_view name);

std::string flag_name(std::string_view field);
std::string env_name(std::string_view field);

using EnvLookup = std::function<const char*(const char*)>;

// Layers PUNGEN_* environment variables over the current values.
void apply_env(RunConfig& config, const EnvLookup& lookup);
// Layers a JSON object (RunConfig field names as keys) over the current values.
void apply_json(RunConfig& config, const nlohmann::json& json);

}  // namespace punforge
