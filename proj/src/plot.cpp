#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "vqnhite/bench.hpp"

namespace vqnhite {

namespace {

struct Series {
  std::string label;
  std::string color;
  std::vector<double> beta;
  std::vector<double> mean;
  std::vector<double> se;
};

std::string fmt(double v) {
  std::ostringstream out;
  out.precision(6);
  out << v;
  return out.str();
}

// Round an axis step to 1/2/5 times a power of ten.
double nice_step(double span, int target_ticks) {
  const double raw = span / std::max(1, target_ticks);
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    if (raw <= m * mag) return m * mag;
  }
  return 10.0 * mag;
}

}  // namespace

void emit_plot(const std::string& trace_csv_path, const std::string& svg_path) {
  const FidelityTrace trace = read_trace_csv(trace_csv_path);
  if (trace.records.empty())
    throw std::runtime_error("emit_plot: trace has no records: " + trace_csv_path);
  const auto rows = summarize(trace);

  std::map<std::string, Series> by_method;
  for (const auto& row : rows) {
    Series& s = by_method[row.method];
    s.beta.push_back(row.beta);
    s.mean.push_back(row.mean_fidelity);
    s.se.push_back(row.se_fidelity);
  }
  for (auto& [name, s] : by_method) {
    if (name == "vite") {
      s.label = "VITE";
      s.color = "#e66100";
    } else if (name == "vqnhite") {
      s.label = "VQNHITE";
      s.color = "#1f77b4";
    } else {
      s.label = name;
      s.color = "#444444";
    }
  }

  double beta_min = 1e300;
  double beta_max = -1e300;
  double f_min = 1e300;
  for (const auto& [name, s] : by_method) {
    for (std::size_t i = 0; i < s.beta.size(); ++i) {
      beta_min = std::min(beta_min, s.beta[i]);
      beta_max = std::max(beta_max, s.beta[i]);
      f_min = std::min(f_min, s.mean[i] - s.se[i]);
    }
  }
  const double f_max = 1.0;
  f_min = std::min(f_min, f_max - 1e-3);
  const double f_pad = 0.05 * (f_max - f_min);
  f_min -= f_pad;

  constexpr double width = 640.0;
  constexpr double height = 440.0;
  constexpr double left = 70.0;
  constexpr double right = 20.0;
  constexpr double top = 30.0;
  constexpr double bottom = 55.0;
  const double plot_w = width - left - right;
  const double plot_h = height - top - bottom;
  const auto x_of = [&](double beta) {
    return left + (beta - beta_min) / (beta_max - beta_min) * plot_w;
  };
  const auto y_of = [&](double f) {
    return top + (f_max - f) / (f_max - f_min) * plot_h;
  };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
      << height << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << plot_w
      << "\" height=\"" << plot_h << "\" fill=\"none\" stroke=\"black\"/>\n";

  const double x_step = nice_step(beta_max - beta_min, 6);
  for (double tick = std::ceil(beta_min / x_step) * x_step; tick <= beta_max + 1e-9;
       tick += x_step) {
    const double x = x_of(tick);
    svg << "<line x1=\"" << x << "\" y1=\"" << top + plot_h << "\" x2=\"" << x << "\" y2=\""
        << top + plot_h + 5 << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << x << "\" y=\"" << top + plot_h + 20
        << "\" font-size=\"12\" text-anchor=\"middle\">" << fmt(tick) << "</text>\n";
  }
  const double y_step = nice_step(f_max - f_min, 6);
  for (double tick = std::ceil(f_min / y_step) * y_step; tick <= f_max + 1e-9;
       tick += y_step) {
    const double y = y_of(tick);
    svg << "<line x1=\"" << left - 5 << "\" y1=\"" << y << "\" x2=\"" << left << "\" y2=\""
        << y << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << left - 9 << "\" y=\"" << y + 4
        << "\" font-size=\"12\" text-anchor=\"end\">" << fmt(tick) << "</text>\n";
  }
  svg << "<text x=\"" << left + plot_w / 2 << "\" y=\"" << height - 12
      << "\" font-size=\"14\" text-anchor=\"middle\">imaginary time &#946;</text>\n";
  svg << "<text x=\"18\" y=\"" << top + plot_h / 2
      << "\" font-size=\"14\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
      << top + plot_h / 2 << ")\">fidelity</text>\n";

  int legend_index = 0;
  for (const auto& [name, s] : by_method) {
    std::ostringstream path;
    for (std::size_t i = 0; i < s.beta.size(); ++i) {
      path << (i == 0 ? 'M' : 'L') << x_of(s.beta[i]) << ' ' << y_of(s.mean[i]) << ' ';
    }
    svg << "<path d=\"" << path.str() << "\" fill=\"none\" stroke=\"" << s.color
        << "\" stroke-width=\"1.5\"/>\n";
    for (std::size_t i = 0; i < s.beta.size(); ++i) {
      const double x = x_of(s.beta[i]);
      if (s.se[i] > 0.0) {
        svg << "<line x1=\"" << x << "\" y1=\"" << y_of(s.mean[i] - s.se[i]) << "\" x2=\""
            << x << "\" y2=\"" << y_of(s.mean[i] + s.se[i]) << "\" stroke=\"" << s.color
            << "\"/>\n";
      }
      if (name == "vite") {
        svg << "<rect x=\"" << x - 2.6 << "\" y=\"" << y_of(s.mean[i]) - 2.6
            << "\" width=\"5.2\" height=\"5.2\" fill=\"" << s.color << "\"/>\n";
      } else {
        svg << "<circle cx=\"" << x << "\" cy=\"" << y_of(s.mean[i]) << "\" r=\"2.6\" fill=\""
            << s.color << "\"/>\n";
      }
    }
    const double ly = top + 16 + 18 * legend_index++;
    svg << "<line x1=\"" << left + 12 << "\" y1=\"" << ly - 4 << "\" x2=\"" << left + 36
        << "\" y2=\"" << ly - 4 << "\" stroke=\"" << s.color << "\" stroke-width=\"2\"/>\n";
    svg << "<text x=\"" << left + 42 << "\" y=\"" << ly << "\" font-size=\"13\">" << s.label
        << "</text>\n";
  }
  svg << "</svg>\n";

  std::ofstream out(svg_path);
  if (!out) throw std::runtime_error("emit_plot: cannot write " + svg_path);
  out << svg.str();
}

}  // namespace vqnhite
