#include "aerotda/plot.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "aerotda/io.hpp"

namespace aerotda::plot {

namespace {

constexpr double kWidth = 480.0;
constexpr double kHeight = 360.0;
constexpr double kMargin = 48.0;

const char* color_for(int dim) { return dim == 0 ? "#1f77b4" : "#d62728"; }

std::string escape(const std::string& s) {
  std::string out;
  for (const char c : s) {
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

// Maps a data rectangle onto the drawing area (y grows upward in data space).
struct Frame {
  double x0, x1, y0, y1;

  double sx(double x) const { return kMargin + (x - x0) / (x1 - x0) * (kWidth - 2 * kMargin); }
  double sy(double y) const {
    return kHeight - kMargin - (y - y0) / (y1 - y0) * (kHeight - 2 * kMargin);
  }
};

Frame padded(double x0, double x1, double y0, double y1) {
  if (!(x1 > x0)) x1 = x0 + 1.0;
  if (!(y1 > y0)) y1 = y0 + 1.0;
  const double px = 0.05 * (x1 - x0);
  const double py = 0.05 * (y1 - y0);
  return {x0 - px, x1 + px, y0 - py, y1 + py};
}

std::string num(double v) { return format_number(std::round(v * 100.0) / 100.0); }

void open_svg(std::ostringstream& s, const std::string& title) {
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
    << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n"
    << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
    << "<text x=\"" << kWidth / 2 << "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">"
    << escape(title) << "</text>\n";
}

void axes(std::ostringstream& s, const Frame& f, const std::string& xlabel, const std::string& ylabel) {
  s << "<g stroke=\"#333\" stroke-width=\"1\">"
    << "<line x1=\"" << kMargin << "\" y1=\"" << kHeight - kMargin << "\" x2=\"" << kWidth - kMargin
    << "\" y2=\"" << kHeight - kMargin << "\"/>"
    << "<line x1=\"" << kMargin << "\" y1=\"" << kMargin << "\" x2=\"" << kMargin << "\" y2=\""
    << kHeight - kMargin << "\"/></g>\n";
  s << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 10
    << "\" text-anchor=\"middle\" font-size=\"11\">" << escape(xlabel) << "</text>\n";
  s << "<text x=\"14\" y=\"" << kHeight / 2 << "\" font-size=\"11\" transform=\"rotate(-90 14 "
    << kHeight / 2 << ")\" text-anchor=\"middle\">" << escape(ylabel) << "</text>\n";
  s << "<text x=\"" << kMargin << "\" y=\"" << kHeight - kMargin + 14 << "\" font-size=\"9\">"
    << num(f.x0) << "</text>"
    << "<text x=\"" << kWidth - kMargin << "\" y=\"" << kHeight - kMargin + 14
    << "\" font-size=\"9\" text-anchor=\"end\">" << num(f.x1) << "</text>\n";
}

}  // namespace

std::string diagram_svg(const PersistenceDiagram& d, const std::string& title) {
  double hi = 0.0;
  for (const auto& p : d) hi = std::max(hi, p.is_essential() ? p.birth : p.death);
  if (hi <= 0.0) hi = 1.0;
  const double inf_level = hi * 1.1;
  const Frame f = padded(0.0, inf_level, 0.0, inf_level);
  std::ostringstream s;
  open_svg(s, title);
  axes(s, f, "birth", "death");
  s << "<line class=\"diagonal\" x1=\"" << f.sx(0) << "\" y1=\"" << f.sy(0) << "\" x2=\""
    << f.sx(inf_level) << "\" y2=\"" << f.sy(inf_level) << "\" stroke=\"#999\" stroke-dasharray=\"4 3\"/>\n";
  if (d.essential_count(0) + d.essential_count(1) > 0) {
    s << "<line x1=\"" << f.sx(0) << "\" y1=\"" << f.sy(inf_level) << "\" x2=\"" << f.sx(inf_level)
      << "\" y2=\"" << f.sy(inf_level) << "\" stroke=\"#bbb\"/>"
      << "<text x=\"" << f.sx(0) + 2 << "\" y=\"" << f.sy(inf_level) - 3
      << "\" font-size=\"9\">inf</text>\n";
  }
  for (const auto& p : d.sorted()) {
    const double y = p.is_essential() ? inf_level : p.death;
    s << "<circle class=\"point\" data-dim=\"" << p.dim << "\" data-birth=\""
      << format_number(p.birth) << "\" data-death=\"" << format_number(p.death) << "\" cx=\""
      << f.sx(p.birth) << "\" cy=\"" << f.sy(y) << "\" r=\"3.5\" fill=\"" << color_for(p.dim)
      << "\"/>\n";
  }
  s << "</svg>\n";
  return s.str();
}

std::string barcode_svg(const PersistenceDiagram& d, const std::string& title) {
  const PersistenceDiagram sorted = d.sorted();
  double hi = 0.0;
  for (const auto& p : sorted) hi = std::max(hi, p.is_essential() ? p.birth : p.death);
  if (hi <= 0.0) hi = 1.0;
  const double right = hi * 1.1;
  const double rows = std::max<double>(1.0, static_cast<double>(sorted.size()));
  const Frame f = padded(0.0, right, 0.0, rows);
  std::ostringstream s;
  open_svg(s, title);
  axes(s, f, "scale", "interval");
  double row = rows - 0.5;
  for (const auto& p : sorted) {
    const double end = p.is_essential() ? right : p.death;
    s << "<line class=\"bar\" data-dim=\"" << p.dim << "\" x1=\"" << f.sx(p.birth) << "\" y1=\""
      << f.sy(row) << "\" x2=\"" << f.sx(end) << "\" y2=\"" << f.sy(row) << "\" stroke=\""
      << color_for(p.dim) << "\" stroke-width=\"3\"/>\n";
    row -= 1.0;
  }
  s << "</svg>\n";
  return s.str();
}

std::string landscape_svg(const Landscape& l, const std::string& title) {
  double t0 = 0.0, t1 = 1.0, vmax = 1.0;
  bool first = true;
  for (const auto& lvl : l.levels) {
    for (const auto& c : lvl) {
      if (first) {
        t0 = t1 = c.t;
        vmax = 0.0;
        first = false;
      }
      t0 = std::min(t0, c.t);
      t1 = std::max(t1, c.t);
      vmax = std::max(vmax, c.value);
    }
  }
  const Frame f = padded(t0, t1, 0.0, vmax);
  std::ostringstream s;
  open_svg(s, title);
  axes(s, f, "t", "lambda_k(t)");
  for (std::size_t k = 0; k < l.levels.size(); ++k) {
    const double shade = l.levels.size() > 1 ? static_cast<double>(k) / (l.levels.size() - 1) : 0.0;
    const int g = static_cast<int>(40 + 160 * shade);
    s << "<polyline class=\"level\" data-k=\"" << k + 1 << "\" fill=\"none\" stroke=\"rgb(" << g
      << ',' << g << ",230)\" points=\"";
    for (const auto& c : l.levels[k]) s << f.sx(c.t) << ',' << f.sy(c.value) << ' ';
    s << "\"/>\n";
  }
  s << "</svg>\n";
  return s.str();
}

std::string embedding_svg(const std::vector<std::string>& labels, const std::vector<Point2>& coords,
                          const std::string& title) {
  double x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  if (!coords.empty()) {
    x0 = x1 = coords[0].x;
    y0 = y1 = coords[0].y;
  }
  for (const auto& p : coords) {
    x0 = std::min(x0, p.x);
    x1 = std::max(x1, p.x);
    y0 = std::min(y0, p.y);
    y1 = std::max(y1, p.y);
  }
  const Frame f = padded(x0, x1, y0, y1);
  std::ostringstream s;
  open_svg(s, title);
  axes(s, f, "x", "y");
  for (std::size_t i = 0; i < coords.size(); ++i) {
    s << "<g class=\"marker\"><circle cx=\"" << f.sx(coords[i].x) << "\" cy=\"" << f.sy(coords[i].y)
      << "\" r=\"4\" fill=\"#2ca02c\"/><text x=\"" << f.sx(coords[i].x) + 6 << "\" y=\""
      << f.sy(coords[i].y) - 6 << "\" font-size=\"10\">"
      << escape(i < labels.size() ? labels[i] : std::to_string(i)) << "</text></g>\n";
  }
  s << "</svg>\n";
  return s.str();
}

std::vector<std::string> emit_plots(const PlotArtifacts& artifacts,
                                    const std::filesystem::path& out_dir) {
  std::vector<std::string> warnings;
  auto write = [&](const std::string& name, auto&& render) {
    try {
      std::filesystem::create_directories(out_dir);
      std::ofstream out = open_output(out_dir / name);
      out << render();
      if (!out) fail(ErrorKind::Io, "write failed");
    } catch (const std::exception& e) {
      warnings.push_back("plot '" + (out_dir / name).string() + "' skipped: " + e.what());
    }
  };
  for (const auto& [stem, d] : artifacts.diagrams) {
    write(stem + "_diagram.svg", [&] { return diagram_svg(d, stem + " persistence diagram"); });
    write(stem + "_barcode.svg", [&] { return barcode_svg(d, stem + " barcode"); });
  }
  for (const auto& [stem, l] : artifacts.landscapes) {
    write(stem + "_landscape.svg", [&] { return landscape_svg(l, stem + " landscape"); });
  }
  if (!artifacts.embedding.empty()) {
    write("embedding.svg", [&] {
      return embedding_svg(artifacts.embedding_labels, artifacts.embedding, "Isomap embedding");
    });
  }
  return warnings;
}

}  // namespace aerotda::plot
