#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace phi3 {

// shortest round-trip decimal representation; stable across runs
std::string fmt_num(double x);
std::string fmt_num(std::int64_t x);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

void write_csv(const std::string& path, const CsvTable& table);

using KeyValues = std::vector<std::pair<std::string, std::string>>;

// flat "key = value" metadata file
void write_manifest(const std::string& path, const KeyValues& kv);

// single-series line chart; log-scaled axes where requested
void write_svg_line(const std::string& path, const std::string& title,
                    const std::vector<double>& xs, const std::vector<double>& ys,
                    bool logx, bool logy);

// "key = value" lines, '#' comments, blank lines ignored
KeyValues parse_config_file(const std::string& path);

// "a,b,c" explicit or "a..b" doubling from a up to b inclusive
std::vector<int> parse_int_list(const std::string& text);
std::vector<double> parse_double_list(const std::string& text);

}  // namespace phi3
