#include "cdflow/curve_io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

#include "cdflow/errors.hpp"

namespace cdflow {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

double parse_number(const std::string& text, std::size_t line) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (!text.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || text.empty()) {
    throw InvalidInput("line " + std::to_string(line) + ": '" + text + "' is not a number");
  }
  if (!std::isfinite(v)) {
    throw InvalidInput("line " + std::to_string(line) + ": non-finite value");
  }
  return v;
}

}  // namespace

SampledCurve read_curve_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  bool header = false;
  std::vector<Vec2> v;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty()) continue;
    if (!header) {
      std::string compact;
      for (char c : t) if (c != ' ') compact += c;
      if (compact != "x,y") throw InvalidInput("curve CSV must start with header 'x,y'");
      header = true;
      continue;
    }
    const auto comma = t.find(',');
    if (comma == std::string::npos || t.find(',', comma + 1) != std::string::npos) {
      throw InvalidInput("line " + std::to_string(line_no) + ": expected two columns");
    }
    v.push_back({parse_number(trim(t.substr(0, comma)), line_no),
                 parse_number(trim(t.substr(comma + 1)), line_no)});
  }
  if (!header) throw InvalidInput("empty curve file");
  return SampledCurve(std::move(v));
}

SampledCurve read_curve_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open curve file " + path.string());
  return read_curve_csv(in);
}

std::string format_double(double v) {
  std::array<char, 32> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

void write_curve_csv(std::ostream& out, const SampledCurve& curve) {
  out << "x,y\n";
  for (const Vec2 p : curve.vertices()) out << format_double(p.x) << ',' << format_double(p.y) << '\n';
}

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InvalidInput("cannot write " + tmp.string());
    out << contents;
    if (!out.flush()) throw InvalidInput("write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw InvalidInput("cannot rename " + tmp.string() + ": " + ec.message());
}

}  // namespace cdflow
