#include "fkdv/io/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "fkdv/io/csv.hpp"

namespace fkdv::io {
namespace {

constexpr double kWidth = 720, kHeight = 480;
constexpr double kLeft = 80, kRight = 180, kTop = 40, kBottom = 60;
constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Axis {
  bool log = false;
  double lo = 0, hi = 1;  // in transformed units

  double transform(double v) const { return log ? std::log10(v) : v; }
  bool usable(double v) const { return std::isfinite(v) && (!log || v > 0.0); }

  void fit(double a, double b) {
    lo = a;
    hi = b;
    if (!(hi > lo)) {
      const double pad = lo == 0.0 ? 1.0 : 0.5 * std::abs(lo);
      lo -= pad;
      hi += pad;
    }
    if (!log) {
      const double pad = 0.05 * (hi - lo);
      lo -= pad;
      hi += pad;
    }
  }

  std::vector<double> ticks() const {
    std::vector<double> t;
    if (log) {
      for (double e = std::ceil(lo); e <= hi + 1e-12; e += 1.0) t.push_back(e);
      if (t.size() >= 2) return t;
      // Less than a decade or two: 1-2-5 steps instead.
      t.clear();
      for (double e = std::floor(lo); e <= std::ceil(hi); e += 1.0) {
        for (double m : {1.0, 2.0, 5.0}) {
          const double v = e + std::log10(m);
          if (v >= lo - 1e-12 && v <= hi + 1e-12) t.push_back(v);
        }
      }
      if (t.size() < 2) t = {lo, hi};
      return t;
    }
    const double raw = (hi - lo) / 5.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double m : {2.0, 5.0, 10.0}) {
      if (step < raw) step = m * mag;
    }
    for (double v = std::ceil(lo / step) * step; v <= hi + 1e-9 * step; v += step) t.push_back(v);
    return t;
  }

  std::string tick_label(double v) const { return label(log ? std::pow(10.0, v) : (std::abs(v) < 1e-14 ? 0.0 : v)); }
};

}  // namespace

std::string render_svg(const FigureSpec& fig, const Table& table) {
  const std::vector<double> xs = table.column(fig.x_column);
  std::vector<std::vector<double>> ys;
  for (const auto& c : fig.y_columns) ys.push_back(table.column(c));

  Axis ax{fig.log_x}, ay{fig.log_y};
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  for (std::size_t s = 0; s < ys.size(); ++s) {
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (!ax.usable(xs[i]) || !ay.usable(ys[s][i])) continue;
      x0 = std::min(x0, ax.transform(xs[i]));
      x1 = std::max(x1, ax.transform(xs[i]));
      y0 = std::min(y0, ay.transform(ys[s][i]));
      y1 = std::max(y1, ay.transform(ys[s][i]));
    }
  }
  if (!std::isfinite(x0)) x0 = x1 = y0 = y1 = 0.0;
  ax.fit(x0, x1);
  ay.fit(y0, y1);

  const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
  auto px = [&](double v) { return kLeft + (ax.transform(v) - ax.lo) / (ax.hi - ax.lo) * pw; };
  auto py = [&](double v) { return kTop + ph - (ay.transform(v) - ay.lo) / (ay.hi - ay.lo) * ph; };

  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
    << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o << "<text x=\"" << num(kLeft + pw / 2) << "\" y=\"24\" text-anchor=\"middle\" font-size=\"14\">"
    << escape(fig.title) << "</text>\n";
  o << "<rect x=\"" << num(kLeft) << "\" y=\"" << num(kTop) << "\" width=\"" << num(pw) << "\" height=\""
    << num(ph) << "\" fill=\"none\" stroke=\"black\"/>\n";

  for (double t : ax.ticks()) {
    const double x = kLeft + (t - ax.lo) / (ax.hi - ax.lo) * pw;
    o << "<line x1=\"" << num(x) << "\" y1=\"" << num(kTop) << "\" x2=\"" << num(x) << "\" y2=\""
      << num(kTop + ph) << "\" stroke=\"#dddddd\"/>\n";
    o << "<text x=\"" << num(x) << "\" y=\"" << num(kTop + ph + 16) << "\" text-anchor=\"middle\">"
      << escape(ax.tick_label(t)) << "</text>\n";
  }
  for (double t : ay.ticks()) {
    const double y = kTop + ph - (t - ay.lo) / (ay.hi - ay.lo) * ph;
    o << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(y) << "\" x2=\"" << num(kLeft + pw)
      << "\" y2=\"" << num(y) << "\" stroke=\"#dddddd\"/>\n";
    o << "<text x=\"" << num(kLeft - 6) << "\" y=\"" << num(y + 4) << "\" text-anchor=\"end\">"
      << escape(ay.tick_label(t)) << "</text>\n";
  }
  o << "<text x=\"" << num(kLeft + pw / 2) << "\" y=\"" << num(kHeight - 16)
    << "\" text-anchor=\"middle\">" << escape(fig.x_column) << (fig.log_x ? " (log)" : "") << "</text>\n";
  if (fig.log_y) {
    o << "<text x=\"16\" y=\"" << num(kTop + ph / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
      << num(kTop + ph / 2) << ")\">log scale</text>\n";
  }

  for (std::size_t s = 0; s < ys.size(); ++s) {
    const char* colour = kPalette[s % std::size(kPalette)];
    std::vector<std::pair<double, double>> pts;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (ax.usable(xs[i]) && ay.usable(ys[s][i])) pts.emplace_back(px(xs[i]), py(ys[s][i]));
    }
    if (!fig.scatter && pts.size() > 1) {
      o << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.5\" points=\"";
      for (std::size_t i = 0; i < pts.size(); ++i) {
        o << (i ? " " : "") << num(pts[i].first) << ',' << num(pts[i].second);
      }
      o << "\"/>\n";
    }
    if (fig.scatter || pts.size() <= 40) {
      for (const auto& [x, y] : pts) {
        o << "<circle cx=\"" << num(x) << "\" cy=\"" << num(y) << "\" r=\"3\" fill=\"" << colour << "\"/>\n";
      }
    }
    const double ly = kTop + 10 + 18.0 * static_cast<double>(s);
    o << "<line x1=\"" << num(kLeft + pw + 12) << "\" y1=\"" << num(ly) << "\" x2=\"" << num(kLeft + pw + 32)
      << "\" y2=\"" << num(ly) << "\" stroke=\"" << colour << "\" stroke-width=\"2\"/>\n";
    o << "<text x=\"" << num(kLeft + pw + 38) << "\" y=\"" << num(ly + 4) << "\">" << escape(fig.y_columns[s])
      << "</text>\n";
  }
  o << "</svg>\n";
  return o.str();
}

void write_svg(const FigureSpec& fig, const Table& table, const std::filesystem::path& path) {
  const std::string body = render_svg(fig, table);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing", path);
  out << body;
  out.close();
  if (!out) throw IoError("write to " + path.string() + " failed", path);
}

}  // namespace fkdv::io
