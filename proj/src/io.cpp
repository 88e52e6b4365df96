#include "omchaos/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>

namespace omchaos {

std::string format_double(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  if (ec != std::errc{}) return "nan";
  return std::string(buf, ptr);
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string fnv1a_hex(const std::string& s) {
  static const char* digits = "0123456789abcdef";
  std::uint64_t h = fnv1a(s);
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = digits[h & 0xf];
    h >>= 4;
  }
  return out;
}

namespace {

double parse_double(std::string_view sv, const std::string& context) {
  double out = 0.0;
  auto [ptr, ec] = std::from_chars(sv.data(), sv.data() + sv.size(), out);
  if (ec != std::errc{} || ptr != sv.data() + sv.size())
    throw PreconditionError("malformed number '" + std::string(sv) + "' in " + context);
  return out;
}

std::vector<std::string_view> split_csv_line(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = line.find(',', start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      break;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

}  // namespace

void write_trajectory_csv(const std::filesystem::path& path, double t0, double fs,
                          const std::vector<double>& intensity, const std::vector<double>& x,
                          const std::vector<double>& v) {
  std::ostringstream os;
  os << "t,intensity,x,v\n";
  for (std::size_t i = 0; i < intensity.size(); ++i) {
    os << format_double(t0 + static_cast<double>(i) / fs) << ',' << format_double(intensity[i])
       << ',' << format_double(x[i]) << ',' << format_double(v[i]) << '\n';
  }
  write_text_file(path, os.str());
}

TrajectoryCsv read_trajectory_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot open trajectory file: " + path.string());
  std::string line;
  if (!std::getline(in, line) || line.rfind("t,intensity,x,v", 0) != 0)
    throw PreconditionError("trajectory file missing `t,intensity,x,v` header: " + path.string());
  TrajectoryCsv out;
  double t_first = 0.0, t_last = 0.0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto cols = split_csv_line(line);
    if (cols.size() != 4) throw PreconditionError("trajectory row needs 4 columns: " + path.string());
    double t = parse_double(cols[0], path.string());
    if (out.intensity.empty()) t_first = t;
    t_last = t;
    out.intensity.push_back(parse_double(cols[1], path.string()));
    out.x.push_back(parse_double(cols[2], path.string()));
    out.v.push_back(parse_double(cols[3], path.string()));
  }
  if (out.intensity.size() < 2) throw PreconditionError("trajectory file too short: " + path.string());
  out.t0 = t_first;
  out.fs = static_cast<double>(out.intensity.size() - 1) / (t_last - t_first);
  return out;
}

void write_series_csv(const std::filesystem::path& path, const TimeSeries& ts,
                      const std::vector<int>* labels) {
  std::ostringstream os;
  os << (labels ? "t,value,label\n" : "t,value\n");
  for (std::size_t i = 0; i < ts.values.size(); ++i) {
    os << format_double(ts.time_at(i)) << ',' << format_double(ts.values[i]);
    if (labels) os << ',' << (*labels)[i];
    os << '\n';
  }
  write_text_file(path, os.str());
}

LabeledSeries read_series_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot open series file: " + path.string());
  std::string line;
  if (!std::getline(in, line) || line.rfind("t,value", 0) != 0)
    throw PreconditionError("series file missing `t,value` header: " + path.string());
  const bool has_labels = line.rfind("t,value,label", 0) == 0;
  LabeledSeries out;
  double t_first = 0.0, t_last = 0.0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto cols = split_csv_line(line);
    if (cols.size() < 2) throw PreconditionError("series row needs >= 2 columns: " + path.string());
    double t = parse_double(cols[0], path.string());
    if (out.series.values.empty()) t_first = t;
    t_last = t;
    out.series.values.push_back(parse_double(cols[1], path.string()));
    if (has_labels && cols.size() >= 3)
      out.labels.push_back(static_cast<int>(parse_double(cols[2], path.string())));
  }
  if (out.series.values.size() < 2) throw PreconditionError("series file too short: " + path.string());
  out.series.t0 = t_first;
  out.series.fs = static_cast<double>(out.series.values.size() - 1) / (t_last - t_first);
  return out;
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write file: " + path.string());
  out << content;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw PreconditionError("cannot open file: " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace omchaos
