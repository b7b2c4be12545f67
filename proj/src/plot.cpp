#include "boidsense/plot.hpp"

#include <cmath>
#include <cstdio>
#include <map>

#include "boidsense/errors.hpp"

namespace boidsense {

namespace {

std::string num(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

// SVG y grows downwards; world y grows north.
std::string point(const Position& p) { return num(p.x()) + "," + num(-p.y()); }

std::string header(const WorldBounds& b) {
  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" + num(b.min_x) + " " +
         num(-b.max_y) + " " + num(b.width()) + " " + num(b.height()) + "\">\n";
  out +=
      "<style>\n"
      ".world{fill:#ffffff;stroke:#888888;stroke-width:0.1}\n"
      ".track polyline{fill:none;stroke:#1f4e79;stroke-width:0.08}\n"
      ".boid{fill:#d95f02}\n"
      ".detecting{fill:#111111;fill-opacity:0.8}\n"
      ".idle{fill:#cccccc;fill-opacity:0.5}\n"
      "</style>\n";
  out += "<rect class=\"world\" x=\"" + num(b.min_x) + "\" y=\"" + num(-b.max_y) + "\" width=\"" +
         num(b.width()) + "\" height=\"" + num(b.height()) + "\"/>\n";
  return out;
}

std::string polyline(const std::vector<Position>& pts) {
  std::string out = "<polyline points=\"";
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i) out += ' ';
    out += point(pts[i]);
  }
  return out + "\"/>";
}

std::string tracks_body(std::span<const TickTrace> traces, const WorldBounds& b) {
  std::map<BoidId, std::vector<Position>> paths;
  for (const TickTrace& row : traces) {
    for (const BoidState& boid : row.boids) paths[boid.id].push_back(boid.pos);
  }

  std::string out;
  for (const auto& [id, path] : paths) {
    out += "<g class=\"track\" data-boid=\"" + std::to_string(id) + "\">";
    std::vector<Position> segment;
    for (const Position& p : path) {
      if (!segment.empty()) {
        const Position& last = segment.back();
        if (std::abs(p.x() - last.x()) > b.width() / 2 || std::abs(p.y() - last.y()) > b.height() / 2) {
          out += polyline(segment);
          segment.clear();
        }
      }
      segment.push_back(p);
    }
    if (!segment.empty()) out += polyline(segment);
    out += "</g>\n";
  }
  return out;
}

std::string snapshot_body(const TickTrace& last) {
  std::string out;
  for (std::size_t i = 0; i < last.detections.size(); ++i) {
    const DetectionRecord& d = last.detections[i];
    const Position p = i < last.sensor_positions.size() ? last.sensor_positions[i] : Position::Zero();
    out += "<circle class=\"sensor " + std::string(d.count > 0 ? "detecting" : "idle") +
           "\" data-sensor=\"" + std::to_string(d.sensor_id) + "\" cx=\"" + num(p.x()) +
           "\" cy=\"" + num(-p.y()) + "\" r=\"0.6\"/>\n";
  }
  for (const BoidState& boid : last.boids) {
    // Small arrowhead pointing along the heading.
    const double h = boid.heading.degrees;
    const Position tip = boid.pos + 0.6 * heading_vector(h);
    const Position left = boid.pos + 0.3 * heading_vector(h + 145.0);
    const Position right = boid.pos + 0.3 * heading_vector(h - 145.0);
    out += "<polygon class=\"boid\" data-boid=\"" + std::to_string(boid.id) + "\" points=\"" +
           point(tip) + " " + point(left) + " " + point(right) + "\"/>\n";
  }
  return out;
}

}  // namespace

std::string plot_tracks(std::span<const TickTrace> traces, PlotStyle style,
                        const WorldBounds& bounds) {
  if (traces.empty()) throw PreconditionViolation("cannot plot an empty trace");
  std::string out = header(bounds);
  out += style == PlotStyle::tracks ? tracks_body(traces, bounds) : snapshot_body(traces.back());
  out += "</svg>\n";
  return out;
}

}  // namespace boidsense
