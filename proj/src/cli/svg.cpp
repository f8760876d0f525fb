#include "svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace hawkesnet::cli {

namespace {

constexpr double kWidth = 720, kHeight = 440;
constexpr double kLeft = 70, kRight = 170, kTop = 40, kBottom = 60;
const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#17becf"};

std::string esc(const std::string& s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(ch);
    }
  }
  return out;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void add(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void finish() {
    if (!std::isfinite(lo)) lo = 0, hi = 1;
    if (hi - lo < 1e-12 * std::max(1.0, std::abs(hi))) {
      lo -= 0.5;
      hi += 0.5;
    }
    const double pad = 0.05 * (hi - lo);
    lo -= pad;
    hi += pad;
  }
};

class Canvas {
 public:
  Canvas(Range x, Range y) : x_(x), y_(y) {}
  double px(double v) const { return kLeft + (v - x_.lo) / (x_.hi - x_.lo) * (kWidth - kLeft - kRight); }
  double py(double v) const { return kHeight - kBottom - (v - y_.lo) / (y_.hi - y_.lo) * (kHeight - kTop - kBottom); }

  void frame(std::ostringstream& o, const ChartLabels& labels, bool x_ticks) const {
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    o << "<text x=\"" << kWidth / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" << esc(labels.title)
      << "</text>\n";
    const double x0 = kLeft, x1 = kWidth - kRight, y0 = kHeight - kBottom, y1 = kTop;
    o << "<rect x=\"" << num(x0) << "\" y=\"" << num(y1) << "\" width=\"" << num(x1 - x0) << "\" height=\""
      << num(y0 - y1) << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int k = 0; k <= 5; ++k) {
      const double v = y_.lo + (y_.hi - y_.lo) * k / 5.0;
      o << "<line x1=\"" << num(x0) << "\" x2=\"" << num(x1) << "\" y1=\"" << num(py(v)) << "\" y2=\""
        << num(py(v)) << "\" stroke=\"#ddd\"/>\n";
      o << "<text x=\"" << num(x0 - 6) << "\" y=\"" << num(py(v) + 4) << "\" text-anchor=\"end\">" << tick(v)
        << "</text>\n";
      if (x_ticks) {
        const double u = x_.lo + (x_.hi - x_.lo) * k / 5.0;
        o << "<text x=\"" << num(px(u)) << "\" y=\"" << num(y0 + 18) << "\" text-anchor=\"middle\">" << tick(u)
          << "</text>\n";
      }
    }
    o << "<text x=\"" << num((x0 + x1) / 2) << "\" y=\"" << num(kHeight - 15) << "\" text-anchor=\"middle\">"
      << esc(labels.x_label) << "</text>\n";
    o << "<text transform=\"translate(18," << num((y0 + y1) / 2) << ") rotate(-90)\" text-anchor=\"middle\">"
      << esc(labels.y_label) << "</text>\n";
  }

  static void legend(std::ostringstream& o, const std::vector<Series>& series) {
    for (std::size_t k = 0; k < series.size(); ++k) {
      const double y = kTop + 10 + 18.0 * static_cast<double>(k);
      const char* color = kPalette[k % std::size(kPalette)];
      o << "<rect x=\"" << num(kWidth - kRight + 12) << "\" y=\"" << num(y - 9) << "\" width=\"12\" height=\"10\" fill=\""
        << color << "\"/>\n";
      o << "<text x=\"" << num(kWidth - kRight + 30) << "\" y=\"" << num(y) << "\">" << esc(series[k].label)
        << "</text>\n";
    }
  }

 private:
  Range x_, y_;
};

void save(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

}  // namespace

void write_line_chart(const std::filesystem::path& path, const std::vector<Series>& series,
                      const ChartLabels& labels) {
  Range xr, yr;
  for (const auto& s : series) {
    if (s.x.size() != s.y.size()) throw std::invalid_argument("series '" + s.label + "' has mismatched x/y");
    for (double v : s.x) xr.add(v);
    for (double v : s.y) yr.add(v);
  }
  xr.finish();
  yr.finish();
  Canvas canvas(xr, yr);
  std::ostringstream o;
  canvas.frame(o, labels, true);
  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    const char* color = kPalette[k % std::size(kPalette)];
    o << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.y[i])) continue;
      o << num(canvas.px(s.x[i])) << "," << num(canvas.py(s.y[i])) << " ";
    }
    o << "\"/>\n";
    if (s.markers) {
      for (std::size_t i = 0; i < s.x.size(); ++i) {
        if (!std::isfinite(s.y[i])) continue;
        o << "<circle cx=\"" << num(canvas.px(s.x[i])) << "\" cy=\"" << num(canvas.py(s.y[i]))
          << "\" r=\"3\" fill=\"" << color << "\"/>\n";
      }
    }
  }
  Canvas::legend(o, series);
  o << "</svg>\n";
  save(path, o.str());
}

void write_bar_chart(const std::filesystem::path& path, const std::vector<std::string>& categories,
                     const std::vector<Series>& series, const ChartLabels& labels) {
  Range xr, yr;
  xr.lo = -0.5;
  xr.hi = static_cast<double>(categories.size()) - 0.5;
  yr.add(0.0);
  for (const auto& s : series) {
    if (s.y.size() != categories.size()) throw std::invalid_argument("series '" + s.label + "' has wrong length");
    for (double v : s.y) yr.add(v);
  }
  yr.finish();
  yr.lo = std::min(0.0, yr.lo);
  Canvas canvas(xr, yr);
  std::ostringstream o;
  canvas.frame(o, labels, false);
  const double slot = canvas.px(1.0) - canvas.px(0.0);
  const double bar = 0.8 * slot / static_cast<double>(std::max<std::size_t>(1, series.size()));
  for (std::size_t c = 0; c < categories.size(); ++c) {
    const double left = canvas.px(static_cast<double>(c)) - 0.4 * slot;
    for (std::size_t k = 0; k < series.size(); ++k) {
      const double v = series[k].y[c];
      const double top = canvas.py(std::max(v, 0.0)), base = canvas.py(std::min(v, 0.0));
      o << "<rect x=\"" << num(left + bar * static_cast<double>(k)) << "\" y=\"" << num(top) << "\" width=\""
        << num(bar) << "\" height=\"" << num(base - top) << "\" fill=\"" << kPalette[k % std::size(kPalette)]
        << "\"/>\n";
    }
    o << "<text x=\"" << num(canvas.px(static_cast<double>(c))) << "\" y=\"" << num(kHeight - kBottom + 18)
      << "\" text-anchor=\"middle\">" << esc(categories[c]) << "</text>\n";
  }
  Canvas::legend(o, series);
  o << "</svg>\n";
  save(path, o.str());
}

}  // namespace hawkesnet::cli
