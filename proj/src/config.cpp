#include "punforge/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

namespace punforge {

namespace {

template <typename T>
T parse_number(const std::string& name, const std::string& text) {
  T value{};
  const auto* end = text.data() + text.size();
  if constexpr (std::is_floating_point_v<T>) {
    try {
      std::size_t used = 0;
      value = static_cast<T>(std::stod(text, &used));
      if (used == text.size()) return value;
    } catch (const std::exception&) {
    }
  } else {
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec == std::errc() && ptr == end) return value;
  }
  throw ConfigError("invalid value for " + name + ": '" + text + "'");
}

bool parse_bool(const std::string& name, const std::string& text) {
  if (text == "1" || text == "true" || text == "yes" || text == "on") return true;
  if (text == "0" || text == "false" || text == "no" || text == "off") return false;
  throw ConfigError("invalid boolean for " + name + ": '" + text + "'");
}

template <typename T>
ConfigField number_field(std::string name, T RunConfig::*member) {
  ConfigField f;
  f.name = name;
  f.set_text = [name, member](RunConfig& c, const std::string& t) {
    c.*member = parse_number<T>(name, t);
  };
  f.set_json = [name, member](RunConfig& c, const nlohmann::json& j) {
    if (!j.is_number()) throw ConfigError(name + " must be a number");
    if constexpr (std::is_integral_v<T>) {
      if (!j.is_number_integer() || (std::is_unsigned_v<T> && j.get<std::int64_t>() < 0)) {
        throw ConfigError(name + " must be a non-negative integer");
      }
    }
    c.*member = j.get<T>();
  };
  return f;
}

ConfigField string_field(std::string name, std::string RunConfig::*member) {
  ConfigField f;
  f.name = name;
  f.set_text = [member](RunConfig& c, const std::string& t) { c.*member = t; };
  f.set_json = [name, member](RunConfig& c, const nlohmann::json& j) {
    if (!j.is_string()) throw ConfigError(name + " must be a string");
    c.*member = j.get<std::string>();
  };
  return f;
}

ConfigField bool_field(std::string name, bool RunConfig::*member) {
  ConfigField f;
  f.name = name;
  f.is_flag = true;
  f.set_text = [name, member](RunConfig& c, const std::string& t) {
    c.*member = parse_bool(name, t);
  };
  f.set_json = [name, member](RunConfig& c, const nlohmann::json& j) {
    if (!j.is_boolean()) throw ConfigError(name + " must be a boolean");
    c.*member = j.get<bool>();
  };
  return f;
}

}  // namespace

const std::vector<ConfigField>& config_fields() {
  static const std::vector<ConfigField> fields = {
      string_field("corpus", &RunConfig::corpus),
      string_field("lm", &RunConfig::lm),
      string_field("skipgram", &RunConfig::skipgram),
      string_field("wordnet", &RunConfig::wordnet),
      string_field("pairs", &RunConfig::pairs),
      string_field("ratings", &RunConfig::ratings),
      string_field("scores", &RunConfig::scores),
      string_field("input", &RunConfig::input),
      string_field("out", &RunConfig::out),
      string_field("vocab_out", &RunConfig::vocab_out),
      string_field("text_out", &RunConfig::text_out),
      number_field("order", &RunConfig::order),
      number_field("dim", &RunConfig::dim),
      number_field("d1", &RunConfig::d1),
      number_field("d2", &RunConfig::d2),
      number_field("window", &RunConfig::window),
      number_field("topic_k", &RunConfig::topic_k),
      number_field("threshold", &RunConfig::threshold),
      number_field("pool", &RunConfig::pool),
      number_field("keep", &RunConfig::keep),
      number_field("max_outputs", &RunConfig::max_outputs),
      number_field("epochs", &RunConfig::epochs),
      number_field("negatives", &RunConfig::negatives),
      number_field("step_size", &RunConfig::step_size),
      number_field("min_count", &RunConfig::min_count),
      number_field("seed", &RunConfig::seed),
      number_field("permutations", &RunConfig::permutations),
      number_field("min_corr", &RunConfig::min_corr),
      number_field("verbosity", &RunConfig::verbosity),
      bool_field("line_mode", &RunConfig::line_mode),
      bool_field("pretagged", &RunConfig::pretagged),
      bool_field("rerank_surprisal", &RunConfig::rerank_surprisal),
      bool_field("absolute_position", &RunConfig::absolute_position),
      bool_field("swap_only", &RunConfig::swap_only),
  };
  return fields;
}

const ConfigField* find_field(std::string_view name) {
  for (const auto& f : config_fields()) {
    if (f.name == name) return &f;
  }
  return nullptr;
}

std::string flag_name(std::string_view field) {
  std::string out = "--";
  for (char c : field) out.push_back(c == '_' ? '-' : c);
  return out;
}

std::string env_name(std::string_view field) {
  std::string out = "PUNGEN_";
  for (char c : field) out.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
  return out;
}

void apply_env(RunConfig& config, const EnvLookup& lookup) {
  for (const auto& f : config_fields()) {
    const auto name = env_name(f.name);
    if (const char* v = lookup(name.c_str()); v && *v) f.set_text(config, v);
  }
}

void apply_json(RunConfig& config, const nlohmann::json& json) {
  if (!json.is_object()) throw ConfigError("config file must hold a JSON object");
  for (const auto& [key, value] : json.items()) {
    const auto* f = find_field(key);
    if (!f) throw ConfigError("unknown config key '" + key + "'");
    f->set_json(config, value);
  }
}

}  // namespace punforge
