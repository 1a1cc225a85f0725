#include "mgarena/io.hpp"

#include <algorithm>
#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "mgarena/error.hpp"

namespace mgarena {

using nlohmann::json;

Format parse_format(const std::string& name) {
  if (name == "csv") return Format::Csv;
  if (name == "json") return Format::Json;
  throw Error(ErrorCode::ConfigError, "unknown format '" + name + "'");
}

namespace {

// Non-negative decimal as an integer numerator over 10^digits.
struct Decimal {
  long long units = 0;
  int digits = 0;
};

Decimal parse_decimal(const std::string& s) {
  const auto bad = [&] { return Error(ErrorCode::ConfigError, "expected a non-negative decimal, got '" + s + "'"); };
  Decimal d;
  bool any = false, point = false;
  for (char ch : s) {
    if (ch == '.' && !point) {
      point = true;
    } else if (ch >= '0' && ch <= '9') {
      if (d.units > 100000000000000LL) throw bad();
      d.units = d.units * 10 + (ch - '0');
      d.digits += point;
      any = true;
    } else {
      throw bad();
    }
  }
  if (!any) throw bad();
  return d;
}

long long rescale(const Decimal& d, int digits) {
  long long v = d.units;
  for (int i = d.digits; i < digits; ++i) v *= 10;
  return v;
}

double decimal_to_double(long long units, int digits) {
  std::string text = std::to_string(units);
  if (digits > 0) {
    if (static_cast<int>(text.size()) <= digits) text.insert(0, static_cast<std::size_t>(digits + 1) - text.size(), '0');
    text.insert(text.size() - static_cast<std::size_t>(digits), ".");
  }
  return std::strtod(text.c_str(), nullptr);
}

}  // namespace

std::vector<double> parse_decimal_grid(const std::string& text) {
  std::vector<std::string> parts;
  std::string cell;
  std::istringstream in(text);
  while (std::getline(in, cell, ':')) parts.push_back(cell);
  if (!text.empty() && text.back() == ':') parts.push_back("");
  if (parts.size() == 1) {
    const Decimal d = parse_decimal(parts[0]);
    return {decimal_to_double(d.units, d.digits)};
  }
  if (parts.size() != 3) throw Error(ErrorCode::ConfigError, "p grid must be 'start:stop:step', got '" + text + "'");
  const Decimal a = parse_decimal(parts[0]), b = parse_decimal(parts[1]), s = parse_decimal(parts[2]);
  const int digits = std::max({a.digits, b.digits, s.digits});
  const long long lo = rescale(a, digits), hi = rescale(b, digits), step = rescale(s, digits);
  if (step <= 0) throw Error(ErrorCode::ConfigError, "p grid step must be positive");
  if (hi < lo) throw Error(ErrorCode::ConfigError, "p grid stop lies below start");
  if ((hi - lo) / step >= 100000) throw Error(ErrorCode::ConfigError, "p grid has too many points");
  std::vector<double> out;
  for (long long v = lo; v <= hi; v += step) out.push_back(decimal_to_double(v, digits));
  return out;
}

namespace {

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

double parse_double(const std::string& s) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw Error(ErrorCode::ParseError, "bad number '" + s + "'");
  }
  if (used != s.size()) throw Error(ErrorCode::ParseError, "bad number '" + s + "'");
  return v;
}

long long parse_integer(const std::string& s) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(s, &used);
  } catch (const std::exception&) {
    throw Error(ErrorCode::ParseError, "bad integer '" + s + "'");
  }
  if (used != s.size()) throw Error(ErrorCode::ParseError, "bad integer '" + s + "'");
  return v;
}

std::uint64_t parse_unsigned(const std::string& s) {
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(s, &used);
  } catch (const std::exception&) {
    throw Error(ErrorCode::ParseError, "bad integer '" + s + "'");
  }
  if (used != s.size() || s.front() == '-') throw Error(ErrorCode::ParseError, "bad integer '" + s + "'");
  return v;
}

const char* kCsvHeader = "model,L,p,n,bond,mean,stderr,count,seed";

std::string config_to_json(const GameConfig& c) {
  std::string orders;
  for (double n : c.entropy_orders) orders += (orders.empty() ? "" : ", ") + fmt17(n);
  auto flag = [](bool b) { return b ? "true" : "false"; };
  return std::string("    {\"model\": \"") + model_name(c.model) + "\", \"L\": " + std::to_string(c.L) +
         ", \"p\": " + fmt17(c.p) + ", \"steps\": " + std::to_string(c.steps) +
         ", \"burn_in\": " + std::to_string(effective_burn_in(c)) +
         ", \"trajectories\": " + std::to_string(c.trajectories) + ", \"seed\": " + std::to_string(c.seed) +
         ", \"entropy_orders\": [" + orders + "], \"record_profile\": " + flag(c.record_profile) +
         ", \"measure_every\": " + std::to_string(c.measure_every) + ", \"workers\": " + std::to_string(c.workers) +
         ", \"layout_only\": " + flag(c.layout_only) + ", \"disentangler_order\": " + fmt17(c.disentangler_order) + "}";
}

GameConfig config_from_json(const json& j) {
  GameConfig c;
  c.model = parse_model(j.at("model").get<std::string>());
  c.L = j.at("L").get<int>();
  c.p = j.at("p").get<double>();
  c.steps = j.at("steps").get<int>();
  c.burn_in = j.at("burn_in").get<int>();
  c.trajectories = j.at("trajectories").get<int>();
  c.seed = j.at("seed").get<std::uint64_t>();
  c.entropy_orders = j.at("entropy_orders").get<std::vector<double>>();
  c.record_profile = j.at("record_profile").get<bool>();
  c.measure_every = j.at("measure_every").get<int>();
  c.workers = j.at("workers").get<int>();
  c.layout_only = j.at("layout_only").get<bool>();
  c.disentangler_order = j.at("disentangler_order").get<double>();
  return c;
}

}  // namespace

std::string stats_to_csv(std::vector<EnsembleStat> stats) {
  std::stable_sort(stats.begin(), stats.end(), key_less);
  std::string out = kCsvHeader;
  out += '\n';
  for (const auto& s : stats) {
    out += s.model + ',' + std::to_string(s.L) + ',' + fmt17(s.p) + ',' + fmt17(s.n) + ',' +
           (s.bond == 0 ? std::string("half") : std::to_string(s.bond)) + ',' + fmt17(s.mean) + ',' +
           fmt17(s.stderr_) + ',' + std::to_string(s.count) + ',' + std::to_string(s.seed) + '\n';
  }
  return out;
}

std::vector<EnsembleStat> stats_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) throw Error(ErrorCode::ParseError, "missing CSV header");
  std::vector<EnsembleStat> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::string cell;
    std::istringstream row(line);
    while (std::getline(row, cell, ',')) f.push_back(cell);
    if (f.size() != 9) throw Error(ErrorCode::ParseError, "expected 9 CSV fields: " + line);
    EnsembleStat s;
    s.model = f[0];
    s.L = static_cast<int>(parse_integer(f[1]));
    s.p = parse_double(f[2]);
    s.n = parse_double(f[3]);
    s.bond = f[4] == "half" ? 0 : static_cast<int>(parse_integer(f[4]));
    s.mean = parse_double(f[5]);
    s.stderr_ = parse_double(f[6]);
    s.count = static_cast<int>(parse_integer(f[7]));
    s.seed = parse_unsigned(f[8]);
    out.push_back(std::move(s));
  }
  return out;
}

std::string stats_to_json(std::vector<EnsembleStat> stats, const std::vector<GameConfig>& configs) {
  // Written by hand so every float carries 17 significant digits; parsed with nlohmann.
  std::stable_sort(stats.begin(), stats.end(), key_less);
  std::string out = "{\n  \"configs\": [";
  for (std::size_t i = 0; i < configs.size(); ++i) out += (i ? ",\n" : "\n") + config_to_json(configs[i]);
  out += configs.empty() ? "],\n  \"stats\": [" : "\n  ],\n  \"stats\": [";
  for (std::size_t i = 0; i < stats.size(); ++i) {
    const auto& s = stats[i];
    out += i ? ",\n" : "\n";
    out += "    {\"model\": \"" + s.model + "\", \"L\": " + std::to_string(s.L) + ", \"p\": " + fmt17(s.p) +
           ", \"n\": " + fmt17(s.n) + ", \"bond\": " + (s.bond == 0 ? std::string("\"half\"") : std::to_string(s.bond)) +
           ", \"mean\": " + fmt17(s.mean) + ", \"stderr\": " + fmt17(s.stderr_) +
           ", \"count\": " + std::to_string(s.count) + ", \"seed\": " + std::to_string(s.seed) + "}";
  }
  out += stats.empty() ? "]\n}\n" : "\n  ]\n}\n";
  return out;
}

void stats_from_json(const std::string& text, std::vector<EnsembleStat>& stats, std::vector<GameConfig>& configs) {
  try {
    const json j = json::parse(text);
    stats.clear();
    configs.clear();
    for (const auto& r : j.at("stats")) {
      EnsembleStat s;
      s.model = r.at("model").get<std::string>();
      s.L = r.at("L").get<int>();
      s.p = r.at("p").get<double>();
      s.n = r.at("n").get<double>();
      s.bond = r.at("bond").is_string() ? 0 : r.at("bond").get<int>();
      s.mean = r.at("mean").get<double>();
      s.stderr_ = r.at("stderr").get<double>();
      s.count = r.at("count").get<int>();
      s.seed = r.at("seed").get<std::uint64_t>();
      stats.push_back(std::move(s));
    }
    for (const auto& c : j.at("configs")) configs.push_back(config_from_json(c));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

void write_file_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoError, "cannot open " + tmp + ": " + std::strerror(errno));
    out << content;
    out.flush();
    if (!out) {
      std::remove(tmp.c_str());
      throw Error(ErrorCode::IoError, "cannot write " + tmp);
    }
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    const std::string why = std::strerror(errno);
    std::remove(tmp.c_str());
    throw Error(ErrorCode::IoError, "cannot rename to " + path + ": " + why);
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void export_stats(const std::vector<EnsembleStat>& stats, const std::vector<GameConfig>& configs,
                  const std::string& path, Format format) {
  write_file_atomic(path, format == Format::Csv ? stats_to_csv(stats) : stats_to_json(stats, configs));
}

std::vector<EnsembleStat> import_stats(const std::string& path) {
  const std::string text = read_file(path);
  if (path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0) {
    std::vector<EnsembleStat> stats;
    std::vector<GameConfig> configs;
    stats_from_json(text, stats, configs);
    return stats;
  }
  return stats_from_csv(text);
}

}  // namespace mgarena
