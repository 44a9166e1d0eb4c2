#include "svesim/report_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace svesim::io {

namespace {

std::ofstream open_out(const std::filesystem::path& file) {
  if (file.has_parent_path()) std::filesystem::create_directories(file.parent_path());
  std::ofstream os(file, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + file.string());
  return os;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

std::string short_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_ensemble_csv(const std::filesystem::path& file, const PathEnsemble& e) {
  auto os = open_out(file);
  for (std::size_t k = 0; k < e.n_steps; ++k) os << (k ? "," : "") << format_double(e.grid[k]);
  os << "\r\n";
  for (std::size_t p = 0; p < e.n_paths; ++p) {
    const auto row = e.row(p);
    for (std::size_t k = 0; k < e.n_steps; ++k) os << (k ? "," : "") << format_double(row[k]);
    os << "\r\n";
  }
}

void write_table_csv(const std::filesystem::path& file, const std::vector<Column>& columns) {
  const std::size_t n = columns.empty() ? 0 : columns.front().values.size();
  for (const auto& c : columns)
    if (c.values.size() != n) throw std::invalid_argument("write_table_csv: column lengths differ");
  auto os = open_out(file);
  for (std::size_t j = 0; j < columns.size(); ++j) os << (j ? "," : "") << csv_field(columns[j].name);
  os << "\r\n";
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < columns.size(); ++j) os << (j ? "," : "") << format_double(columns[j].values[i]);
    os << "\r\n";
  }
}

void write_summary(const std::filesystem::path& file, const std::vector<std::pair<std::string, std::string>>& kv) {
  auto os = open_out(file);
  for (const auto& [k, v] : kv) os << k << " = " << v << "\n";
}

void write_svg(const std::filesystem::path& file, const PlotSpec& spec, const std::vector<Series>& series) {
  constexpr double W = 720, H = 440, L = 80, R = 170, Tm = 40, B = 60;
  const auto tx = [&](double x) { return spec.log_x ? std::log10(x) : x; };
  const auto ty = [&](double y) { return spec.log_y ? std::log10(y) : y; };
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin, ymin = xmin, ymax = -xmin;
  for (const auto& s : series)
    for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
      const double x = tx(s.x[i]), y = ty(s.y[i]);
      if (!std::isfinite(x) || !std::isfinite(y)) continue;
      xmin = std::min(xmin, x), xmax = std::max(xmax, x), ymin = std::min(ymin, y), ymax = std::max(ymax, y);
    }
  if (!(xmin <= xmax)) xmin = 0, xmax = 1;
  if (!(ymin <= ymax)) ymin = 0, ymax = 1;
  if (xmax == xmin) xmax = xmin + 1;
  if (ymax == ymin) ymin -= 0.5, ymax += 0.5;
  const double pad = 0.05 * (ymax - ymin);
  ymin -= pad, ymax += pad;
  const double pw = W - L - R, ph = H - Tm - B;
  const auto px = [&](double x) { return L + (x - xmin) / (xmax - xmin) * pw; };
  const auto py = [&](double y) { return Tm + (ymax - y) / (ymax - ymin) * ph; };

  static const char* colours[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
  std::ostringstream os;
  os.precision(6);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" viewBox=\"0 0 " << W
     << " " << H << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"15\">"
     << xml_escape(spec.title) << "</text>\n";
  os << "<rect x=\"" << L << "\" y=\"" << Tm << "\" width=\"" << pw << "\" height=\"" << ph
     << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 5; ++i) {
    const double xv = xmin + (xmax - xmin) * i / 5.0, yv = ymin + (ymax - ymin) * i / 5.0;
    const double xl = spec.log_x ? std::pow(10.0, xv) : xv, yl = spec.log_y ? std::pow(10.0, yv) : yv;
    os << "<line x1=\"" << px(xv) << "\" y1=\"" << Tm + ph << "\" x2=\"" << px(xv) << "\" y2=\"" << Tm + ph + 5
       << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << px(xv) << "\" y=\"" << Tm + ph + 18
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << short_num(xl) << "</text>\n";
    os << "<line x1=\"" << L - 5 << "\" y1=\"" << py(yv) << "\" x2=\"" << L << "\" y2=\"" << py(yv)
       << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << L - 8 << "\" y=\"" << py(yv) + 4
       << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << short_num(yl) << "</text>\n";
  }
  if (ymin < 0.0 && ymax > 0.0 && !spec.log_y)
    os << "<line x1=\"" << L << "\" y1=\"" << py(0) << "\" x2=\"" << L + pw << "\" y2=\"" << py(0)
       << "\" stroke=\"#999\" stroke-dasharray=\"4 3\"/>\n";
  os << "<text x=\"" << L + pw / 2 << "\" y=\"" << H - 15
     << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" << xml_escape(spec.x_label)
     << "</text>\n";
  os << "<text x=\"18\" y=\"" << Tm + ph / 2 << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
     << "transform=\"rotate(-90 18 " << Tm + ph / 2 << ")\">" << xml_escape(spec.y_label) << "</text>\n";
  for (std::size_t s = 0; s < series.size(); ++s) {
    const char* col = colours[s % 6];
    os << "<polyline fill=\"none\" stroke=\"" << col << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < std::min(series[s].x.size(), series[s].y.size()); ++i) {
      const double x = tx(series[s].x[i]), y = ty(series[s].y[i]);
      if (std::isfinite(x) && std::isfinite(y)) os << px(x) << "," << py(y) << " ";
    }
    os << "\"/>\n";
    const double ly = Tm + 10 + 20.0 * static_cast<double>(s);
    os << "<line x1=\"" << L + pw + 12 << "\" y1=\"" << ly << "\" x2=\"" << L + pw + 36 << "\" y2=\"" << ly
       << "\" stroke=\"" << col << "\" stroke-width=\"2\"/>\n";
    os << "<text x=\"" << L + pw + 42 << "\" y=\"" << ly + 4 << "\" font-family=\"sans-serif\" font-size=\"12\">"
       << xml_escape(series[s].name) << "</text>\n";
  }
  os << "</svg>\n";
  auto out = open_out(file);
  out << os.str();
}

}  // namespace svesim::io
