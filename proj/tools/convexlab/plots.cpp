#include "plots.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <vector>

#include "convexlab/transforms.hpp"

namespace convexlab::cli {

namespace {

struct Series {
  std::string name;
  std::vector<std::pair<double, double>> pts;
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

// Flat polyline chart; log axes map through log10.
void write_svg(const std::filesystem::path& path, const std::string& title, const std::vector<Series>& series,
               bool log_axes) {
  const double W = 640, H = 420, M = 50;
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  auto tx = [&](double v) { return log_axes ? std::log10(v) : v; };
  for (const auto& s : series) {
    for (const auto& [x, y] : s.pts) {
      if (!std::isfinite(tx(x)) || !std::isfinite(tx(y))) continue;
      x0 = std::min(x0, tx(x));
      x1 = std::max(x1, tx(x));
      y0 = std::min(y0, tx(y));
      y1 = std::max(y1, tx(y));
    }
  }
  if (!(x1 > x0)) x1 = x0 + 1;
  if (!(y1 > y0)) y1 = y0 + 1;
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
  std::ofstream os(path);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << M << "\" y=\"20\" font-family=\"sans-serif\" font-size=\"14\">" << title
     << (log_axes ? " (log-log)" : "") << "</text>\n";
  os << "<rect x=\"" << M << "\" y=\"" << M << "\" width=\"" << W - 2 * M << "\" height=\"" << H - 2 * M
     << "\" fill=\"none\" stroke=\"#888\"/>\n";
  for (std::size_t k = 0; k < series.size(); ++k) {
    os << "<polyline fill=\"none\" stroke=\"" << colors[k % 6] << "\" stroke-width=\"1.5\" points=\"";
    for (const auto& [x, y] : series[k].pts) {
      if (!std::isfinite(tx(x)) || !std::isfinite(tx(y))) continue;
      const double px = M + (tx(x) - x0) / (x1 - x0) * (W - 2 * M);
      const double py = H - M - (tx(y) - y0) / (y1 - y0) * (H - 2 * M);
      os << num(px) << ',' << num(py) << ' ';
    }
    os << "\"/>\n";
    os << "<text x=\"" << W - M - 150 << "\" y=\"" << M + 16 * (k + 1) << "\" font-family=\"sans-serif\" font-size=\"11\" fill=\""
       << colors[k % 6] << "\">" << series[k].name << "</text>\n";
  }
  os << "</svg>\n";
}

void write_pairs_csv(const std::filesystem::path& path, const char* header,
                     const std::vector<std::pair<double, double>>& pts) {
  std::ofstream os(path);
  os << header << '\n';
  for (const auto& [x, y] : pts) os << num(x) << ',' << num(y) << '\n';
}

}  // namespace

void emit_plots(const std::string& dir, const StabilityReport& report, const Corpus1D& t) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  const auto& m = report.classification_detail.samples;
  write_pairs_csv(fs::path(dir) / "phi.csv", "z,phi", m.phi);
  write_pairs_csv(fs::path(dir) / "c.csv", "a,c", m.c);
  write_svg(fs::path(dir) / "phi.svg", "phi(z)", {{"phi", m.phi}}, true);
  write_svg(fs::path(dir) / "c.svg", "c(a)", {{"c", m.c}}, true);

  std::ofstream csv(fs::path(dir) / "sandwich.csv");
  csv << "function,x,lower,image,upper\n";
  std::vector<Series> series;
  if (report.sandwich && report.sandwich->big_c.is_finite()) {
    const SandwichFit& s = *report.sandwich;
    const bool gauge = report.classification_detail.type == Classification::GaugeType;
    int shown = 0;
    for (std::size_t i = 0; i < t.size() && shown < 3; ++i) {
      const PLConvex1D& img = t.image(i);
      if (img.is_indicator()) continue;
      const PLConvex1D ref = compose_dilate(gauge ? j_transform(t.domain[i]) : t.domain[i], s.alpha);
      const double end = img.bounded_domain() ? img.knots().back().x.get_d() : 2.0 * img.knots().back().x.get_d() + 1.0;
      Series lo{"c*ref #" + std::to_string(i), {}}, mid{"T f #" + std::to_string(i), {}}, hi{"C*ref #" + std::to_string(i), {}};
      for (int k = 0; k <= 64; ++k) {
        const double x = end * k / 64.0;
        const double r = ref.eval(x).to_double();
        const double v = img.eval(x).to_double();
        const double l = s.c.get_d() * r, u = s.big_c.value().get_d() * r;
        csv << i << ',' << num(x) << ',' << num(l) << ',' << num(v) << ',' << num(u) << '\n';
        lo.pts.emplace_back(x, l);
        mid.pts.emplace_back(x, v);
        hi.pts.emplace_back(x, u);
      }
      series.push_back(std::move(lo));
      series.push_back(std::move(mid));
      series.push_back(std::move(hi));
      ++shown;
    }
  }
  write_svg(fs::path(dir) / "sandwich.svg", "sandwich envelopes", series, false);
}

}  // namespace convexlab::cli
