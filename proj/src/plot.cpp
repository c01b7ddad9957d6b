#include "ethsim/plot.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <sstream>
#include <stdexcept>

namespace ethsim {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

const char* human_palette(size_t i) {
  static const char* colors[] = {"#e67e22", "#8e44ad", "#16a085", "#7f8c8d"};
  return colors[i % 4];
}

}  // namespace

std::string render_plot(const std::vector<TraceRow>& trace,
                        const std::vector<nlohmann::json>& report_rows,
                        const Scenario& sc) {
  if (trace.empty()) throw std::runtime_error("render_plot: empty trace");

  const double scale = 220.0;
  const double mx = 60.0, my = 46.0;
  const double aw = sc.arena_width * scale, ah = sc.arena_height * scale;
  const double gap = 56.0, panel_h = 150.0;
  const double width = mx * 2 + aw;
  const double height = my + 24 + ah + gap + panel_h + 54;
  const double ax = mx, ay = my + 24;  // arena top-left

  auto px = [&](double x) { return ax + x * scale; };
  auto py = [&](double y) { return ay + (sc.arena_height - y) * scale; };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(width)
      << "\" height=\"" << fmt(height) << "\" viewBox=\"0 0 " << fmt(width)
      << " " << fmt(height) << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
  svg << "<text x=\"" << fmt(mx) << "\" y=\"28\" font-family=\"sans-serif\" "
         "font-size=\"17\" fill=\"#222\">"
      << sc.name << " (seed " << sc.seed << ")</text>\n";

  // Arena frame.
  svg << "<rect x=\"" << fmt(ax) << "\" y=\"" << fmt(ay) << "\" width=\""
      << fmt(aw) << "\" height=\"" << fmt(ah)
      << "\" fill=\"#fafafa\" stroke=\"#444\"/>\n";

  // Goal sites with the proximity radius ring.
  for (const auto& g : sc.goals) {
    const char* color = g.dangerous ? "#c0392b" : "#27ae60";
    svg << "<circle cx=\"" << fmt(px(g.position.x)) << "\" cy=\""
        << fmt(py(g.position.y)) << "\" r=\""
        << fmt(sc.params.proximity_radius * scale)
        << "\" fill=\"none\" stroke=\"" << color
        << "\" stroke-dasharray=\"4 4\" opacity=\"0.6\"/>\n";
    svg << "<circle cx=\"" << fmt(px(g.position.x)) << "\" cy=\""
        << fmt(py(g.position.y)) << "\" r=\"7\" fill=\"" << color << "\"/>\n";
    svg << "<text x=\"" << fmt(px(g.position.x) + 10) << "\" y=\""
        << fmt(py(g.position.y) - 8)
        << "\" font-family=\"sans-serif\" font-size=\"13\" fill=\"" << color
        << "\">" << g.id << (g.dangerous ? " (danger)" : "") << "</text>\n";
  }

  // Trajectories, subsampled; start square, end dot (ringed red if halted).
  std::map<std::string, std::vector<const TraceRow*>> by_agent;
  std::vector<std::string> order;
  for (const auto& r : trace) {
    if (!by_agent.count(r.agent_id)) order.push_back(r.agent_id);
    by_agent[r.agent_id].push_back(&r);
  }
  size_t humans_seen = 0;
  double legend_x = ax;
  for (const auto& id : order) {
    const auto& rows = by_agent[id];
    const AgentSpec& spec = sc.agent(id);
    const char* color = spec.role == Role::Robot ? "#1f6fb2"
                                                 : human_palette(humans_seen++);
    svg << "<polyline fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"2\" points=\"";
    const size_t step = std::max<size_t>(1, rows.size() / 900);
    for (size_t i = 0; i < rows.size(); i += step)
      svg << fmt(px(rows[i]->position.x)) << "," << fmt(py(rows[i]->position.y))
          << " ";
    svg << fmt(px(rows.back()->position.x)) << ","
        << fmt(py(rows.back()->position.y)) << "\"/>\n";
    Vec2 s0 = rows.front()->position, s1 = rows.back()->position;
    svg << "<rect x=\"" << fmt(px(s0.x) - 5) << "\" y=\"" << fmt(py(s0.y) - 5)
        << "\" width=\"10\" height=\"10\" fill=\"" << color << "\"/>\n";
    if (rows.back()->halted)
      svg << "<circle cx=\"" << fmt(px(s1.x)) << "\" cy=\"" << fmt(py(s1.y))
          << "\" r=\"9\" fill=\"none\" stroke=\"#c0392b\" stroke-width=\"2\"/>\n";
    svg << "<circle cx=\"" << fmt(px(s1.x)) << "\" cy=\"" << fmt(py(s1.y))
        << "\" r=\"5\" fill=\"" << color << "\"/>\n";
    svg << "<text x=\"" << fmt(legend_x) << "\" y=\"" << fmt(ay + ah + 22)
        << "\" font-family=\"sans-serif\" font-size=\"13\" fill=\"" << color
        << "\">" << id << "</text>\n";
    legend_x += 10.0 * id.size() + 28;
  }

  // Enforced override targets.
  bool any_enforce = false;
  for (const auto& row : report_rows) {
    if (row.at("decision").at("type") != "enforce") continue;
    any_enforce = true;
    int idx = row.at("decision").at("enforced_index").get<int>();
    const auto& target = row.at("alternatives").at(idx).at("target");
    double x = px(target.at(0).get<double>());
    double y = py(target.at(1).get<double>());
    svg << "<path d=\"M " << fmt(x) << " " << fmt(y - 7) << " L " << fmt(x + 7)
        << " " << fmt(y) << " L " << fmt(x) << " " << fmt(y + 7) << " L "
        << fmt(x - 7) << " " << fmt(y)
        << " Z\" fill=\"#f1c40f\" stroke=\"#8a6d00\" opacity=\"0.85\"/>\n";
  }
  if (any_enforce)
    svg << "<text x=\"" << fmt(legend_x) << "\" y=\"" << fmt(ay + ah + 22)
        << "\" font-family=\"sans-serif\" font-size=\"13\" fill=\"#8a6d00\">"
           "&#9670; override target</text>\n";

  // Score-spread panel: delta_q per governor cycle with the enforce line.
  const double bx = ax, by = ay + ah + gap, bw = aw, bh = panel_h;
  double max_dq = sc.params.enforce_threshold * 1.5;
  for (const auto& row : report_rows)
    max_dq = std::max(max_dq, row.at("delta_q").get<double>());
  max_dq *= 1.08;
  const size_t n = report_rows.size();
  auto qx = [&](size_t i) {
    return n <= 1 ? bx : bx + bw * static_cast<double>(i) /
                                  static_cast<double>(n - 1);
  };
  auto qy = [&](double v) { return by + bh - bh * (v / max_dq); };

  svg << "<rect x=\"" << fmt(bx) << "\" y=\"" << fmt(by) << "\" width=\""
      << fmt(bw) << "\" height=\"" << fmt(bh)
      << "\" fill=\"#fafafa\" stroke=\"#444\"/>\n";
  double ty = qy(sc.params.enforce_threshold);
  svg << "<line x1=\"" << fmt(bx) << "\" y1=\"" << fmt(ty) << "\" x2=\""
      << fmt(bx + bw) << "\" y2=\"" << fmt(ty)
      << "\" stroke=\"#c0392b\" stroke-dasharray=\"6 4\"/>\n";
  svg << "<text x=\"" << fmt(bx + bw - 150) << "\" y=\"" << fmt(ty - 5)
      << "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"#c0392b\">"
         "enforce threshold "
      << fmt(sc.params.enforce_threshold) << "</text>\n";
  if (n > 0) {
    svg << "<polyline fill=\"none\" stroke=\"#2c3e50\" stroke-width=\"1.5\" "
           "points=\"";
    for (size_t i = 0; i < n; ++i)
      svg << fmt(qx(i)) << "," << fmt(qy(report_rows[i].at("delta_q").get<double>()))
          << " ";
    svg << "\"/>\n";
    for (size_t i = 0; i < n; ++i) {
      if (report_rows[i].at("decision").at("type") != "enforce") continue;
      svg << "<circle cx=\"" << fmt(qx(i)) << "\" cy=\""
          << fmt(qy(report_rows[i].at("delta_q").get<double>()))
          << "\" r=\"2.5\" fill=\"#f1c40f\" stroke=\"#8a6d00\"/>\n";
    }
  }
  svg << "<text x=\"" << fmt(bx) << "\" y=\"" << fmt(by + bh + 20)
      << "\" font-family=\"sans-serif\" font-size=\"13\" fill=\"#222\">"
         "goal-score spread per governor cycle (max "
      << fmt(max_dq / 1.08) << ")</text>\n";
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace ethsim
