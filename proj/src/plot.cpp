#include "svf/plot.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>
#include <vector>

#include "svf/error.hpp"

namespace svf::plot {

namespace {

struct Series {
  std::vector<double> x, lower, upper, h;
};

Series sample(const model::SvFunction& f, const std::optional<model::AffineMap>& h, std::size_t rows) {
  if (model::dimension(f) != 1) throw InvalidArgument("plots need a scalar instance");
  if (h && h->n() != 1) throw InvalidArgument("plots need a scalar map");
  if (rows < 2) throw InvalidArgument("plots need at least two rows");
  const auto [lo, hi] = model::inf_sup(f);
  const model::DomainInterval dom = model::domain(f);
  Series s;
  for (std::size_t k = 0; k < rows; ++k) {
    const double x = k + 1 == rows ? dom.b : dom.a + static_cast<double>(k) * dom.width() / static_cast<double>(rows - 1);
    s.x.push_back(x);
    s.lower.push_back(lo(x));
    s.upper.push_back(hi(x));
    if (h) s.h.push_back((*h)(x)[0]);
  }
  return s;
}

}  // namespace

std::string shortest(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string plot_csv(const model::SvFunction& f, const std::optional<model::AffineMap>& h, std::size_t rows) {
  const Series s = sample(f, h, rows);
  std::string out = h ? "x,lower,upper,h\r\n" : "x,lower,upper\r\n";
  for (std::size_t k = 0; k < s.x.size(); ++k) {
    out += shortest(s.x[k]) + "," + shortest(s.lower[k]) + "," + shortest(s.upper[k]);
    if (h) out += "," + shortest(s.h[k]);
    out += "\r\n";
  }
  return out;
}

std::string plot_svg(const model::SvFunction& f, const std::optional<model::AffineMap>& h, std::size_t rows) {
  const Series s = sample(f, h, rows);
  constexpr double kW = 640, kH = 400, kPad = 40;
  const double x0 = s.x.front(), x1 = s.x.back();
  double y0 = *std::min_element(s.lower.begin(), s.lower.end());
  double y1 = *std::max_element(s.upper.begin(), s.upper.end());
  if (!s.h.empty()) {
    y0 = std::min(y0, *std::min_element(s.h.begin(), s.h.end()));
    y1 = std::max(y1, *std::max_element(s.h.begin(), s.h.end()));
  }
  if (y1 - y0 < 1e-12) {
    y0 -= 1;
    y1 += 1;
  }
  const double xs = x1 > x0 ? (kW - 2 * kPad) / (x1 - x0) : 1.0;
  const double ys = (kH - 2 * kPad) / (y1 - y0);
  auto polyline = [&](const std::vector<double>& ys_data, const char* color, const char* label) {
    std::ostringstream os;
    os << "  <polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" data-series=\"" << label
       << "\" points=\"";
    for (std::size_t k = 0; k < s.x.size(); ++k) {
      os << (k ? " " : "") << shortest(kPad + (s.x[k] - x0) * xs) << ","
         << shortest(kH - kPad - (ys_data[k] - y0) * ys);
    }
    os << "\"/>\n";
    return os.str();
  };
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH << "\">\n";
  os << "  <rect x=\"0\" y=\"0\" width=\"" << kW << "\" height=\"" << kH << "\" fill=\"white\"/>\n";
  os << polyline(s.lower, "#1f77b4", "lower");
  os << polyline(s.upper, "#d62728", "upper");
  if (!s.h.empty()) os << polyline(s.h, "#2ca02c", "h");
  os << "</svg>\n";
  return os.str();
}

}  // namespace svf::plot
