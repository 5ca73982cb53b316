#include "phi3/runio.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace phi3 {

std::string fmt_num(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  // shortest representation that round-trips
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof(buf), "%.*g", prec, x);
    double back = 0.0;
    std::sscanf(buf, "%lf", &back);
    if (back == x) break;
  }
  return buf;
}

std::string fmt_num(std::int64_t x) { return std::to_string(x); }

void write_csv(const std::string& path, const CsvTable& table) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + path);
  for (std::size_t i = 0; i < table.header.size(); ++i)
    os << (i ? "," : "") << table.header[i];
  os << "\n";
  for (const auto& row : table.rows) {
    if (row.size() != table.header.size())
      throw std::runtime_error("csv row width mismatch");
    for (std::size_t i = 0; i < row.size(); ++i)
      os << (i ? "," : "") << row[i];
    os << "\n";
  }
  if (!os) throw std::runtime_error("write failed: " + path);
}

void write_manifest(const std::string& path, const KeyValues& kv) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + path);
  for (const auto& [k, v] : kv) os << k << " = " << v << "\n";
}

void write_svg_line(const std::string& path, const std::string& title,
                    const std::vector<double>& xs, const std::vector<double>& ys,
                    bool logx, bool logy) {
  if (xs.size() != ys.size() || xs.empty())
    throw std::invalid_argument("svg series mismatch");
  auto tx = [&](double v) { return logx ? std::log10(v) : v; };
  auto ty = [&](double v) { return logy ? std::log10(v) : v; };
  double x0 = tx(xs[0]), x1 = x0, y0 = ty(ys[0]), y1 = y0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    x0 = std::min(x0, tx(xs[i]));
    x1 = std::max(x1, tx(xs[i]));
    y0 = std::min(y0, ty(ys[i]));
    y1 = std::max(y1, ty(ys[i]));
  }
  if (x1 == x0) x1 = x0 + 1.0;
  if (y1 == y0) y1 = y0 + 1.0;
  const double W = 640, H = 420, m = 50;
  std::ostringstream ss;
  ss << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W
     << "\" height=\"" << H << "\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
     << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" "
        "font-family=\"sans-serif\" font-size=\"14\">"
     << title << (logx ? " [log x]" : "") << (logy ? " [log y]" : "")
     << "</text>\n<polyline fill=\"none\" stroke=\"#1f77b4\" "
        "stroke-width=\"1.5\" points=\"";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double px = m + (tx(xs[i]) - x0) / (x1 - x0) * (W - 2 * m);
    const double py = H - m - (ty(ys[i]) - y0) / (y1 - y0) * (H - 2 * m);
    ss << fmt_num(px) << "," << fmt_num(py) << " ";
  }
  ss << "\"/>\n<rect x=\"" << m << "\" y=\"" << m << "\" width=\"" << W - 2 * m
     << "\" height=\"" << H - 2 * m
     << "\" fill=\"none\" stroke=\"#888\"/>\n</svg>\n";
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + path);
  os << ss.str();
}

namespace {
std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}
}  // namespace

KeyValues parse_config_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot read " + path);
  KeyValues kv;
  std::string line;
  while (std::getline(is, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("config line without '=': " + line);
    kv.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return kv;
}

std::vector<double> parse_double_list(const std::string& text) {
  const auto range = text.find("..");
  std::vector<double> out;
  if (range != std::string::npos) {
    const double a = std::stod(trim(text.substr(0, range)));
    const double b = std::stod(trim(text.substr(range + 2)));
    if (a <= 0.0 || b < a) throw std::invalid_argument("bad range " + text);
    for (double v = a; v <= b * (1.0 + 1e-12); v *= 2.0) out.push_back(v);
    return out;
  }
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(std::stod(item));
  }
  if (out.empty()) throw std::invalid_argument("empty list: " + text);
  return out;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  for (double v : parse_double_list(text)) {
    const int i = static_cast<int>(std::llround(v));
    if (std::fabs(v - i) > 1e-9) throw std::invalid_argument("non-integer: " + text);
    out.push_back(i);
  }
  return out;
}

}  // namespace phi3
