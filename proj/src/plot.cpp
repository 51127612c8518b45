#include "rewire/plot.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace rewire {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(item);
  if (!line.empty() && line.back() == ',') out.push_back("");
  return out;
}

}  // namespace

int CsvTable::column_index(const std::string& name) const {
  auto it = std::find(columns.begin(), columns.end(), name);
  return it == columns.end() ? -1 : static_cast<int>(it - columns.begin());
}

std::vector<double> CsvTable::column(const std::string& name) const {
  int idx = column_index(name);
  if (idx < 0) throw PlotError("csv: no column '" + name + "'");
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r[static_cast<size_t>(idx)]);
  return out;
}

CsvTable read_csv(std::istream& in) {
  CsvTable t;
  std::string line;
  bool have_header = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    auto cells = split_csv_line(line);
    if (!have_header) {
      t.columns = cells;
      have_header = true;
      continue;
    }
    std::vector<double> row;
    for (const auto& c : cells) {
      try {
        row.push_back(c.empty() ? std::nan("") : std::stod(c));
      } catch (const std::exception&) {
        row.push_back(std::nan(""));
      }
    }
    row.resize(t.columns.size(), std::nan(""));
    t.rows.push_back(std::move(row));
  }
  if (!have_header) throw PlotError("csv: empty input");
  if (t.rows.empty()) throw PlotError("csv: no data rows");
  return t;
}

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PlotError("cannot open csv: " + path);
  return read_csv(in);
}

namespace {

struct Series {
  std::string label;
  std::vector<double> x, y;
};

struct Panel {
  std::string title;
  std::vector<Series> series;
  bool log_x = false;
  bool log_y = false;
  bool points_only = false;
};

double tx(double v, bool logscale) {
  return logscale ? std::log10(std::max(v, 1e-300)) : v;
}

void render_panel(std::ostream& os, const Panel& p, double x0, double y0,
                  double w, double h) {
  double lo_x = 1e300, hi_x = -1e300, lo_y = 1e300, hi_y = -1e300;
  for (const auto& s : p.series)
    for (size_t i = 0; i < s.x.size(); ++i) {
      if (std::isnan(s.x[i]) || std::isnan(s.y[i])) continue;
      double vx = tx(s.x[i], p.log_x), vy = tx(s.y[i], p.log_y);
      lo_x = std::min(lo_x, vx);
      hi_x = std::max(hi_x, vx);
      lo_y = std::min(lo_y, vy);
      hi_y = std::max(hi_y, vy);
    }
  if (lo_x > hi_x) throw PlotError("plot: no finite data for panel " + p.title);
  if (hi_x == lo_x) hi_x = lo_x + 1;
  if (hi_y == lo_y) hi_y = lo_y + 1;
  double pad = 30;
  auto X = [&](double v) {
    return x0 + pad + (tx(v, p.log_x) - lo_x) / (hi_x - lo_x) * (w - 2 * pad);
  };
  auto Y = [&](double v) {
    return y0 + h - pad - (tx(v, p.log_y) - lo_y) / (hi_y - lo_y) * (h - 2 * pad);
  };
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c",
                                 "#9467bd", "#ff7f0e", "#8c564b"};
  os << "<rect x='" << x0 + pad << "' y='" << y0 + pad << "' width='"
     << w - 2 * pad << "' height='" << h - 2 * pad
     << "' fill='none' stroke='#888'/>\n";
  os << "<text x='" << x0 + w / 2 << "' y='" << y0 + 16
     << "' text-anchor='middle' font-size='12'>" << p.title << "</text>\n";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g .. %.3g", lo_y, hi_y);
  os << "<text x='" << x0 + pad << "' y='" << y0 + h - 8
     << "' font-size='9' fill='#555'>y" << (p.log_y ? " (log10)" : "") << ": "
     << buf << "</text>\n";
  int ci = 0;
  for (const auto& s : p.series) {
    const char* color = colors[ci++ % 6];
    if (!p.points_only) {
      os << "<polyline fill='none' stroke='" << color << "' points='";
      for (size_t i = 0; i < s.x.size(); ++i) {
        if (std::isnan(s.x[i]) || std::isnan(s.y[i])) continue;
        os << X(s.x[i]) << "," << Y(s.y[i]) << " ";
      }
      os << "'/>\n";
    } else {
      for (size_t i = 0; i < s.x.size(); ++i) {
        if (std::isnan(s.x[i]) || std::isnan(s.y[i])) continue;
        os << "<circle cx='" << X(s.x[i]) << "' cy='" << Y(s.y[i])
           << "' r='2' fill='" << color << "'/>\n";
      }
    }
    if (!s.label.empty())
      os << "<text x='" << x0 + w - pad << "' y='" << y0 + pad + 12 * ci
         << "' text-anchor='end' font-size='10' fill='" << color << "'>"
         << s.label << "</text>\n";
  }
}

void require_columns(const CsvTable& t, const std::vector<std::string>& cols,
                     const std::string& kind) {
  std::string missing;
  for (const auto& c : cols)
    if (t.column_index(c) < 0) missing += (missing.empty() ? "" : ",") + c;
  if (!missing.empty()) {
    std::string expect;
    for (const auto& c : cols) expect += (expect.empty() ? "" : ",") + c;
    throw PlotError("plot kind '" + kind + "' expects columns [" + expect +
                    "]; missing [" + missing + "]");
  }
}

}  // namespace

void write_plot(const CsvTable& data, const std::string& kind,
                std::ostream& out) {
  std::vector<Panel> panels;
  if (kind == "trace") {
    require_columns(data, {"time", "gamma_f", "ks_D", "max_degree"}, kind);
    auto time = data.column("time");
    for (const std::string& col : {"gamma_f", "ks_D", "max_degree"}) {
      Panel p;
      p.title = col;
      p.series.push_back({"", time, data.column(col)});
      panels.push_back(std::move(p));
    }
  } else if (kind == "degree") {
    require_columns(data, {"degree", "count"}, kind);
    Panel p;
    p.title = "degree distribution (log-log)";
    p.log_x = p.log_y = true;
    p.points_only = true;
    p.series.push_back({"", data.column("degree"), data.column("count")});
    panels.push_back(std::move(p));
  } else if (kind == "tvd") {
    require_columns(data, {"l", "tvd_avg", "tvd_min", "tvd_max"}, kind);
    Panel p;
    p.title = "total variation distance vs walk length";
    auto l = data.column("l");
    p.series.push_back({"avg", l, data.column("tvd_avg")});
    p.series.push_back({"min", l, data.column("tvd_min")});
    p.series.push_back({"max", l, data.column("tvd_max")});
    panels.push_back(std::move(p));
  } else if (kind == "minwalk") {
    require_columns(data, {"n", "gamma", "l_min"}, kind);
    Panel p;
    p.title = "minimum walk length vs n";
    auto n = data.column("n");
    auto gamma = data.column("gamma");
    auto lmin = data.column("l_min");
    std::map<double, Series> per_gamma;
    for (size_t i = 0; i < n.size(); ++i) {
      auto& s = per_gamma[gamma[i]];
      if (s.label.empty()) {
        std::ostringstream lab;
        lab << "gamma=" << gamma[i];
        s.label = lab.str();
      }
      s.x.push_back(n[i]);
      s.y.push_back(lmin[i]);
    }
    for (auto& [g, s] : per_gamma) p.series.push_back(std::move(s));
    panels.push_back(std::move(p));
  } else {
    throw PlotError("unknown plot kind '" + kind +
                    "' (expected trace|degree|tvd|minwalk)");
  }

  double panel_w = 320, panel_h = 240;
  double width = panel_w * panels.size(), height = panel_h;
  out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << width
      << "' height='" << height << "'>\n";
  for (size_t i = 0; i < panels.size(); ++i)
    render_panel(out, panels[i], panel_w * i, 0, panel_w, panel_h);
  out << "</svg>\n";
}

void write_plot(const CsvTable& data, const std::string& kind,
                const std::string& out_path) {
  std::ofstream out(out_path);
  if (!out) throw PlotError("cannot open for writing: " + out_path);
  write_plot(data, kind, out);
}

}  // namespace rewire
