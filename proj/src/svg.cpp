#include "blowup/svg.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace blowup {

namespace {

constexpr std::array<const char*, 6> kPalette = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v == 0.0 ? 0.0 : v);
  return buf;
}

struct BandPoint {
  double alpha;
  double mu;
};

void require_planar(const ProjPoint& y) {
  if (y.dim() != 2 || y.field() != Field::Real) throw std::invalid_argument("SVG portraits need real planar data");
}

BandPoint to_band(const BlowupPoint& p) {
  require_planar(p.y);
  const double y0 = p.y.homog()(0).real();
  const double y1 = p.y.homog()(1).real();
  double alpha = std::atan2(y1, y0);
  double sign = 1.0;
  if (alpha < 0.0) {
    alpha += std::numbers::pi;
    sign = -1.0;
  }
  if (alpha >= std::numbers::pi) alpha -= std::numbers::pi;
  double mu = 0.0;
  if (!p.on_sigma()) mu = sign * (y0 * p.x(0).real() + y1 * p.x(1).real());
  return {alpha, mu};
}

}  // namespace

std::string render_svg(const std::vector<Orbit<BlowupPoint>>& orbits, const FixedSetOnSigma* fixed,
                       const SvgOptions& options) {
  const double c = options.size / 2.0;
  auto place = [&](const BandPoint& b) {
    const double r = options.sigma_radius + options.band_halfwidth * std::tanh(b.mu / options.mu_scale);
    return std::array<double, 2>{c + r * std::cos(2.0 * b.alpha), c - r * std::sin(2.0 * b.alpha)};
  };

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << options.size << "\" height=\"" << options.size
      << "\" viewBox=\"0 0 " << options.size << ' ' << options.size << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!options.title.empty()) {
    svg << "<text x=\"8\" y=\"18\" font-family=\"sans-serif\" font-size=\"13\">" << options.title << "</text>\n";
  }

  bool sigma_fixed = false;
  if (fixed != nullptr) {
    for (const auto& comp : fixed->components) sigma_fixed = sigma_fixed || comp.proj_dim >= 1;
  }
  svg << "<circle id=\"sigma\" cx=\"" << fmt(c) << "\" cy=\"" << fmt(c) << "\" r=\"" << fmt(options.sigma_radius)
      << "\" fill=\"none\" stroke=\"black\" stroke-width=\"" << (sigma_fixed ? "3" : "1") << "\"/>\n";

  for (std::size_t k = 0; k < orbits.size(); ++k) {
    const char* colour = kPalette[k % kPalette.size()];
    std::vector<std::vector<std::array<double, 2>>> pieces(1);
    bool have_prev = false;
    BandPoint prev{};
    for (const auto& p : orbits[k].points) {
      const BandPoint b = to_band(p);
      // Wrapping across alpha = 0 flips mu; start a new piece there.
      if (have_prev && std::abs(b.alpha - prev.alpha) > std::numbers::pi / 2 && !pieces.back().empty()) {
        pieces.emplace_back();
      }
      pieces.back().push_back(place(b));
      prev = b;
      have_prev = true;
    }
    for (const auto& piece : pieces) {
      if (piece.empty()) continue;
      svg << "<polyline class=\"orbit\" fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.2\" points=\"";
      for (std::size_t i = 0; i < piece.size(); ++i) {
        if (i > 0) svg << ' ';
        svg << fmt(piece[i][0]) << ',' << fmt(piece[i][1]);
      }
      svg << "\"/>\n";
    }
    if (!orbits[k].points.empty()) {
      const auto s = place(to_band(orbits[k].points.front()));
      svg << "<circle class=\"start\" cx=\"" << fmt(s[0]) << "\" cy=\"" << fmt(s[1]) << "\" r=\"2\" fill=\"" << colour
          << "\"/>\n";
    }
  }

  if (fixed != nullptr) {
    for (const auto& comp : fixed->components) {
      if (comp.proj_dim != 0) continue;
      const auto y = ProjPoint::normalize(fixed->field, comp.basis.front());
      require_planar(y);
      const auto d = place(to_band(sigma_point(y)));
      svg << "<circle class=\"fixed\" cx=\"" << fmt(d[0]) << "\" cy=\"" << fmt(d[1])
          << "\" r=\"4\" fill=\"black\"/>\n";
    }
  }
  svg << "</svg>\n";
  return svg.str();
}

void emit_svg(const std::vector<Orbit<BlowupPoint>>& orbits, const FixedSetOnSigma* fixed, const std::string& path,
              const SvgOptions& options) {
  const std::string text = render_svg(orbits, fixed, options);
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open " + path + " for writing");
  file << text;
  if (!file) throw std::runtime_error("failed writing " + path);
}

}  // namespace blowup
