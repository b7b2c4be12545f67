#include "boidsense/config.hpp"

#include <array>
#include <charconv>
#include <functional>
#include <map>
#include <set>

#include "boidsense/errors.hpp"

namespace boidsense {

std::optional<TraceFormat> trace_format_from_string(std::string_view text) {
  if (text == "csv") return TraceFormat::csv;
  if (text == "jsonl") return TraceFormat::jsonl;
  return std::nullopt;
}

std::optional<PlotStyle> plot_style_from_string(std::string_view text) {
  if (text == "tracks") return PlotStyle::tracks;
  if (text == "snapshot") return PlotStyle::snapshot;
  return std::nullopt;
}

std::string_view to_string(TraceFormat format) { return format == TraceFormat::csv ? "csv" : "jsonl"; }

std::string_view to_string(PlotStyle style) {
  return style == PlotStyle::tracks ? "tracks" : "snapshot";
}

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <typename T>
T parse_number(std::string_view text, std::size_t line, std::string_view key) {
  T value{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ParseError(line, "value '" + std::string(text) + "' for '" + std::string(key) +
                               "' is not a valid number");
  }
  return value;
}

std::string format_double(double v) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

using Setter = std::function<void(ScenarioFile&, std::string_view, std::size_t)>;

template <typename T>
Setter number_field(T SimConfig::*member) {
  return [member](ScenarioFile& s, std::string_view v, std::size_t line) {
    s.config.*member = parse_number<T>(v, line, "");
  };
}

Setter flock_field(double FlockParams::*member) {
  return [member](ScenarioFile& s, std::string_view v, std::size_t line) {
    s.config.flock_params.*member = parse_number<double>(v, line, "");
  };
}

Setter bounds_field(double WorldBounds::*member) {
  return [member](ScenarioFile& s, std::string_view v, std::size_t line) {
    s.config.bounds.*member = parse_number<double>(v, line, "");
  };
}

Setter path_field(std::optional<std::string> ScenarioFile::*member) {
  return [member](ScenarioFile& s, std::string_view v, std::size_t) { s.*member = std::string(v); };
}

const std::map<std::string, Setter, std::less<>>& setters() {
  static const std::map<std::string, Setter, std::less<>> table = {
      {"n_boids", number_field(&SimConfig::n_boids)},
      {"seed", number_field(&SimConfig::seed)},
      {"ticks", number_field(&SimConfig::ticks)},
      {"n_sensors", number_field(&SimConfig::n_sensors)},
      {"sensor_radius", number_field(&SimConfig::sensor_radius)},
      {"min_x", bounds_field(&WorldBounds::min_x)},
      {"max_x", bounds_field(&WorldBounds::max_x)},
      {"min_y", bounds_field(&WorldBounds::min_y)},
      {"max_y", bounds_field(&WorldBounds::max_y)},
      {"topology",
       [](ScenarioFile& s, std::string_view v, std::size_t line) {
         if (v == "torus") {
           s.config.bounds.topology = Topology::torus;
         } else if (v == "bounded") {
           s.config.bounds.topology = Topology::bounded;
         } else {
           throw ParseError(line, "topology must be torus or bounded");
         }
       }},
      {"vision", flock_field(&FlockParams::vision)},
      {"min_separation", flock_field(&FlockParams::min_separation)},
      {"max_align_turn", flock_field(&FlockParams::max_align_turn)},
      {"max_cohere_turn", flock_field(&FlockParams::max_cohere_turn)},
      {"max_separate_turn", flock_field(&FlockParams::max_separate_turn)},
      {"speed", flock_field(&FlockParams::speed)},
      {"invariant_mode",
       [](ScenarioFile& s, std::string_view v, std::size_t line) {
         if (v == "enforce") {
           s.config.invariant_mode = InvariantMode::enforce;
         } else if (v == "record") {
           s.config.invariant_mode = InvariantMode::record;
         } else if (v == "off") {
           s.config.invariant_mode = InvariantMode::off;
         } else {
           throw ParseError(line, "invariant_mode must be enforce, record or off");
         }
       }},
      {"trace", path_field(&ScenarioFile::trace_path)},
      {"trace_format",
       [](ScenarioFile& s, std::string_view v, std::size_t line) {
         s.trace_format = trace_format_from_string(v);
         if (!s.trace_format) throw ParseError(line, "trace_format must be csv or jsonl");
       }},
      {"metrics", path_field(&ScenarioFile::metrics_path)},
      {"detections", path_field(&ScenarioFile::detections_path)},
      {"plot", path_field(&ScenarioFile::plot_path)},
      {"plot_style",
       [](ScenarioFile& s, std::string_view v, std::size_t line) {
         s.plot_style = plot_style_from_string(v);
         if (!s.plot_style) throw ParseError(line, "plot_style must be tracks or snapshot");
       }},
  };
  return table;
}

}  // namespace

ScenarioFile parse_scenario(std::string_view text) {
  ScenarioFile scenario;
  std::set<std::string, std::less<>> seen;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos ? text.size() - pos
                                                                            : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError(line_no, "expected 'key = value'");
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    if (key.empty()) throw ParseError(line_no, "missing key");
    if (value.empty()) throw ParseError(line_no, "missing value for '" + std::string(key) + "'");

    const auto it = setters().find(key);
    if (it == setters().end()) throw ParseError(line_no, "unknown key '" + std::string(key) + "'");
    if (!seen.emplace(key).second) {
      throw ParseError(line_no, "duplicate key '" + std::string(key) + "'");
    }
    try {
      it->second(scenario, value, line_no);
    } catch (const ParseError& e) {
      throw ParseError(line_no, "invalid value for '" + std::string(key) + "': '" +
                                    std::string(value) + "'");
    }
  }

  const bool has_boids = seen.contains("n_boids");
  const bool has_seed = seen.contains("seed");
  if (!has_boids && !has_seed) throw ConfigError("n_boids, seed", "n_boids and seed are required");
  if (!has_boids) throw ConfigError("n_boids", "required");
  if (!has_seed) throw ConfigError("seed", "required");

  validate(scenario.config);
  return scenario;
}

SimConfig parse_config(std::string_view text) { return parse_scenario(text).config; }

std::string serialize_config(const SimConfig& c) {
  std::string out;
  auto line = [&out](std::string_view key, const std::string& value) {
    out.append(key).append(" = ").append(value).append("\n");
  };
  line("n_boids", std::to_string(c.n_boids));
  line("seed", std::to_string(c.seed));
  line("ticks", std::to_string(c.ticks));
  line("n_sensors", std::to_string(c.n_sensors));
  line("sensor_radius", format_double(c.sensor_radius));
  line("min_x", format_double(c.bounds.min_x));
  line("max_x", format_double(c.bounds.max_x));
  line("min_y", format_double(c.bounds.min_y));
  line("max_y", format_double(c.bounds.max_y));
  line("topology", std::string(to_string(c.bounds.topology)));
  line("vision", format_double(c.flock_params.vision));
  line("min_separation", format_double(c.flock_params.min_separation));
  line("max_align_turn", format_double(c.flock_params.max_align_turn));
  line("max_cohere_turn", format_double(c.flock_params.max_cohere_turn));
  line("max_separate_turn", format_double(c.flock_params.max_separate_turn));
  line("speed", format_double(c.flock_params.speed));
  line("invariant_mode", std::string(to_string(c.invariant_mode)));
  return out;
}

}  // namespace boidsense
