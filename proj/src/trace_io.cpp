#include "boidsense/trace_io.hpp"

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "boidsense/errors.hpp"
#include "boidsense/random.hpp"

namespace boidsense {

namespace {

constexpr std::string_view kCsvHeader = "tick,entity_kind,entity_id,x,y,heading,count,rule";

double round6(double v) {
  const double r = std::round(v * 1e6) / 1e6;
  return r == 0.0 ? 0.0 : r;
}

double round_heading6(double degrees) {
  const double r = round6(degrees);
  return (degrees < 360.0 && r >= 360.0) ? 0.0 : r;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto at = line.find(sep, start);
    parts.push_back(line.substr(start, at == std::string_view::npos ? line.size() - start
                                                                    : at - start));
    if (at == std::string_view::npos) break;
    start = at + 1;
  }
  return parts;
}

template <typename T>
T parse_field(std::string_view text, std::size_t line, const char* what) {
  T value{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ParseError(line, std::string("bad ") + what + " '" + std::string(text) + "'");
  }
  return value;
}

std::vector<std::pair<std::size_t, std::string_view>> lines_of(std::string_view text) {
  std::vector<std::pair<std::size_t, std::string_view>> out;
  std::size_t pos = 0;
  std::size_t n = 0;
  while (pos < text.size()) {
    const auto eol = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    ++n;
    out.emplace_back(n, line);
    if (eol == std::string_view::npos) break;
    pos = eol + 1;
  }
  return out;
}

/// Rebuilds decision turns from the heading change between rows.
void recover_turns(std::vector<TickTrace>& traces) {
  for (std::size_t r = 1; r < traces.size(); ++r) {
    std::map<BoidId, double> previous;
    for (const BoidState& b : traces[r - 1].boids) previous[b.id] = b.heading.degrees;
    for (std::size_t i = 0; i < traces[r].boids.size(); ++i) {
      TurnDecision& d = traces[r].decisions[i];
      const auto it = previous.find(traces[r].boids[i].id);
      if (d.rule == Rule::none || it == previous.end()) {
        d.turn = 0.0;
      } else {
        d.turn = subtract_degrees(traces[r].boids[i].heading.degrees, it->second);
      }
    }
  }
}

std::string metadata_config_text(const nlohmann::json& config) {
  std::string text;
  for (const auto& [key, value] : config.items()) {
    text += key + " = " + (value.is_string() ? value.get<std::string>() : value.dump()) + "\n";
  }
  return text;
}

// ---- CSV -------------------------------------------------------------------

std::string export_csv(std::span<const TickTrace> traces, const SimConfig& config) {
  std::string out;
  out += "# generator = ";
  out += kGeneratorId;
  out += "\n";
  const std::string resolved = serialize_config(config);
  for (const auto& [n, line] : lines_of(resolved)) {
    (void)n;
    out.append("# ").append(line).append("\n");
  }
  out.append(kCsvHeader).append("\n");

  for (const TickTrace& row : traces) {
    const std::string tick = std::to_string(row.tick);
    for (std::size_t i = 0; i < row.boids.size(); ++i) {
      const BoidState& b = row.boids[i];
      const Rule rule = i < row.decisions.size() ? row.decisions[i].rule : Rule::none;
      out.append(tick).append(",boid,").append(std::to_string(b.id)).append(",");
      out.append(format_fixed6(b.pos.x())).append(",").append(format_fixed6(b.pos.y()));
      out.append(",").append(format_heading6(b.heading.degrees)).append(",,");
      out.append(to_string(rule)).append("\n");
    }
    for (std::size_t i = 0; i < row.detections.size(); ++i) {
      const DetectionRecord& d = row.detections[i];
      const Position p = i < row.sensor_positions.size() ? row.sensor_positions[i] : Position::Zero();
      out.append(tick).append(",sensor,").append(std::to_string(d.sensor_id)).append(",");
      out.append(format_fixed6(p.x())).append(",").append(format_fixed6(p.y()));
      out.append(",,").append(std::to_string(d.count)).append(",\n");
    }
  }
  return out;
}

LoadedTrace parse_csv(std::string_view text) {
  LoadedTrace loaded;
  std::string config_text;
  bool header_seen = false;
  for (const auto& [n, line] : lines_of(text)) {
    if (line.empty()) continue;
    if (!header_seen && line.front() == '#') {
      std::string_view body = line.substr(1);
      const auto eq = body.find('=');
      const auto key_end = body.find_first_not_of(" \t");
      if (eq != std::string_view::npos && key_end != std::string_view::npos &&
          body.substr(key_end, eq - key_end).starts_with("generator")) {
        const auto v = body.find_first_not_of(" \t", eq + 1);
        loaded.generator = v == std::string_view::npos ? "" : std::string(body.substr(v));
      } else {
        config_text.append(body).append("\n");
      }
      continue;
    }
    if (!header_seen) {
      if (line != kCsvHeader) throw ParseError(n, "expected trace header '" + std::string(kCsvHeader) + "'");
      header_seen = true;
      continue;
    }

    const auto f = split(line, ',');
    if (f.size() != 8) throw ParseError(n, "expected 8 fields, found " + std::to_string(f.size()));
    const auto tick = parse_field<std::int64_t>(f[0], n, "tick");
    if (loaded.traces.empty() || loaded.traces.back().tick != tick) {
      if (!loaded.traces.empty() && tick < loaded.traces.back().tick) {
        throw ParseError(n, "tick " + std::to_string(tick) + " out of order");
      }
      loaded.traces.push_back(TickTrace{});
      loaded.traces.back().tick = tick;
    }
    TickTrace& row = loaded.traces.back();
    const auto id = parse_field<std::int64_t>(f[2], n, "entity_id");
    const Position pos(parse_field<double>(f[3], n, "x"), parse_field<double>(f[4], n, "y"));
    if (f[1] == "boid") {
      const auto rule = rule_from_string(f[7]);
      if (!rule) throw ParseError(n, "bad rule '" + std::string(f[7]) + "'");
      if (!f[6].empty()) throw ParseError(n, "boid rows leave count empty");
      row.boids.push_back({id, pos, Heading{parse_field<double>(f[5], n, "heading")}});
      row.decisions.push_back({*rule, 0.0});
    } else if (f[1] == "sensor") {
      if (!f[5].empty() || !f[7].empty()) throw ParseError(n, "sensor rows leave heading and rule empty");
      const auto count = parse_field<std::int64_t>(f[6], n, "count");
      row.detections.push_back({tick, id, count, count > 0});
      row.sensor_positions.push_back(pos);
    } else {
      throw ParseError(n, "bad entity_kind '" + std::string(f[1]) + "'");
    }
  }
  if (!header_seen) throw ParseError(1, "missing trace header");
  loaded.config = parse_config(config_text);
  recover_turns(loaded.traces);
  return loaded;
}

// ---- JSONL -----------------------------------------------------------------

nlohmann::json config_json(const SimConfig& config) {
  nlohmann::ordered_json out = nlohmann::ordered_json::object();
  const std::string resolved = serialize_config(config);
  for (const auto& [n, line] : lines_of(resolved)) {
    (void)n;
    const auto eq = line.find(" = ");
    const std::string key(line.substr(0, eq));
    const std::string value(line.substr(eq + 3));
    if (key == "topology" || key == "invariant_mode") {
      out[key] = value;
    } else {
      out[key] = nlohmann::json::parse(value);
    }
  }
  return nlohmann::json::parse(out.dump());
}

std::string export_jsonl(std::span<const TickTrace> traces, const SimConfig& config) {
  std::string out;
  nlohmann::ordered_json meta;
  meta["metadata"]["generator"] = kGeneratorId;
  meta["metadata"]["config"] = config_json(config);
  out += meta.dump() + "\n";

  for (const TickTrace& row : traces) {
    nlohmann::ordered_json j;
    j["tick"] = row.tick;
    j["boids"] = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < row.boids.size(); ++i) {
      const BoidState& b = row.boids[i];
      const TurnDecision d = i < row.decisions.size() ? row.decisions[i] : TurnDecision{};
      j["boids"].push_back({{"id", b.id},
                            {"x", round6(b.pos.x())},
                            {"y", round6(b.pos.y())},
                            {"heading", round_heading6(b.heading.degrees)},
                            {"rule", std::string(to_string(d.rule))},
                            {"turn", round6(d.turn)}});
    }
    j["detections"] = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < row.detections.size(); ++i) {
      const DetectionRecord& d = row.detections[i];
      const Position p = i < row.sensor_positions.size() ? row.sensor_positions[i] : Position::Zero();
      j["detections"].push_back({{"sensor_id", d.sensor_id},
                                 {"x", round6(p.x())},
                                 {"y", round6(p.y())},
                                 {"count", d.count},
                                 {"detecting", d.detecting}});
    }
    out += j.dump() + "\n";
  }
  return out;
}

LoadedTrace parse_jsonl(std::string_view text) {
  LoadedTrace loaded;
  bool have_meta = false;
  for (const auto& [n, line] : lines_of(text)) {
    if (line.find_first_not_of(" \t") == std::string_view::npos) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(n, e.what());
    }
    try {
      if (!have_meta) {
        const auto& meta = j.at("metadata");
        loaded.generator = meta.value("generator", "");
        loaded.config = parse_config(metadata_config_text(meta.at("config")));
        have_meta = true;
        continue;
      }
      TickTrace row;
      row.tick = j.at("tick").get<std::int64_t>();
      for (const auto& b : j.at("boids")) {
        const auto rule = rule_from_string(b.at("rule").get<std::string>());
        if (!rule) throw ParseError(n, "bad rule");
        row.boids.push_back({b.at("id").get<BoidId>(),
                             Position(b.at("x").get<double>(), b.at("y").get<double>()),
                             Heading{b.at("heading").get<double>()}});
        row.decisions.push_back({*rule, b.value("turn", 0.0)});
      }
      for (const auto& d : j.at("detections")) {
        row.detections.push_back({row.tick, d.at("sensor_id").get<SensorId>(),
                                  d.at("count").get<std::int64_t>(),
                                  d.at("detecting").get<bool>()});
        row.sensor_positions.emplace_back(d.at("x").get<double>(), d.at("y").get<double>());
      }
      loaded.traces.push_back(std::move(row));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(n, e.what());
    }
  }
  if (!have_meta) throw ParseError(1, "missing metadata line");
  return loaded;
}

}  // namespace

std::string format_fixed6(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", round6(value));
  return buf;
}

std::string format_heading6(double degrees) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", round_heading6(degrees));
  return buf;
}

std::string export_trace(std::span<const TickTrace> traces, TraceFormat format,
                         const SimConfig& config) {
  if (traces.empty()) throw PreconditionViolation("cannot export an empty trace");
  return format == TraceFormat::csv ? export_csv(traces, config) : export_jsonl(traces, config);
}

LoadedTrace parse_trace(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') return parse_jsonl(text);
  return parse_csv(text);
}

std::string export_metrics(std::span<const TickMetrics> metrics) {
  std::string out = "tick,polarization,mean_flockmates,n_components,mean_component_polarization\n";
  for (const TickMetrics& m : metrics) {
    out.append(std::to_string(m.tick)).append(",");
    out.append(format_fixed6(m.polarization)).append(",");
    out.append(format_fixed6(m.mean_flockmates)).append(",");
    out.append(std::to_string(m.n_components)).append(",");
    out.append(format_fixed6(m.mean_component_polarization)).append("\n");
  }
  return out;
}

std::string export_detection_summary(std::span<const SensorTotals> totals) {
  std::string out = "sensor_id,detection_ticks,cumulative_count\n";
  for (const SensorTotals& t : totals) {
    out.append(std::to_string(t.sensor_id)).append(",");
    out.append(std::to_string(t.detection_ticks)).append(",");
    out.append(std::to_string(t.cumulative_count)).append("\n");
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw IoError("write to '" + path + "' failed");
}

}  // namespace boidsense
