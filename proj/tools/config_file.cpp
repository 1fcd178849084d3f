#include "config_file.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <numbers>
#include <sstream>

#include "sinhreg/errors.hpp"

namespace sinhreg::cli {
namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    parts.push_back(trim(text.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

double parse_number(std::string_view text, std::string_view what) {
  double value = 0.0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc() || ptr != end) {
    throw ConfigurationError("cannot parse " + std::string(what) + " '" + std::string(text) + "'");
  }
  return value;
}

int parse_int(std::string_view text) {
  const std::string t = trim(text);
  int value = 0;
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
    throw ConfigurationError("cannot parse integer '" + t + "'");
  }
  return value;
}

}  // namespace

KeyValues parse_key_values(std::string_view text, std::string_view origin) {
  KeyValues kv;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    const std::string where = std::string(origin) + ":" + std::to_string(lineno);
    if (eq == std::string::npos) throw ConfigurationError(where + ": expected key = value");
    const std::string key = trim(std::string_view(body).substr(0, eq));
    const std::string value = trim(std::string_view(body).substr(eq + 1));
    if (key.empty()) throw ConfigurationError(where + ": empty key");
    if (!kv.emplace(key, value).second) throw ConfigurationError(where + ": duplicate key '" + key + "'");
  }
  return kv;
}

KeyValues read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigurationError("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_key_values(buf.str(), path);
}

double parse_delta(std::string_view text) {
  std::string t = lower(trim(text));
  t.erase(std::remove(t.begin(), t.end(), ' '), t.end());
  const auto at = t.find("pi");
  if (at == std::string::npos) return parse_number(t, "delta");

  std::string coef = t.substr(0, at);
  if (!coef.empty() && coef.back() == '*') coef.pop_back();
  const double c = coef.empty() ? 1.0 : parse_number(coef, "delta coefficient");
  const std::string rest = t.substr(at + 2);
  double d = 1.0;
  if (!rest.empty()) {
    if (rest.front() != '/') throw ConfigurationError("cannot parse delta '" + std::string(text) + "'");
    d = parse_number(std::string_view(rest).substr(1), "delta denominator");
    if (d == 0.0) throw ConfigurationError("delta denominator is zero");
  }
  return c * std::numbers::pi / d;
}

std::vector<double> parse_delta_list(std::string_view text) {
  std::vector<double> out;
  for (const auto& part : split(text, ',')) out.push_back(parse_delta(part));
  return out;
}

std::vector<int> parse_int_list(std::string_view text) {
  const std::string t = trim(text);
  if (t.find(':') != std::string::npos) {
    const auto parts = split(t, ':');
    if (parts.size() < 2 || parts.size() > 3) throw ConfigurationError("range must be first:last[:step]");
    const int first = parse_int(parts[0]);
    const int last = parse_int(parts[1]);
    const int step = parts.size() == 3 ? parse_int(parts[2]) : 1;
    if (step < 1 || last < first) throw ConfigurationError("range '" + t + "' is empty or has step < 1");
    std::vector<int> out;
    for (int v = first; v <= last; v += step) out.push_back(v);
    return out;
  }
  std::vector<int> out;
  for (const auto& part : split(t, ',')) out.push_back(parse_int(part));
  return out;
}

bool parse_bool(std::string_view text) {
  const std::string t = lower(trim(text));
  if (t == "1" || t == "true" || t == "yes" || t == "on") return true;
  if (t == "0" || t == "false" || t == "no" || t == "off") return false;
  throw ConfigurationError("cannot parse boolean '" + t + "'");
}

void apply_config(const KeyValues& kv, ExperimentConfig& config) {
  for (const auto& [key, value] : kv) {
    if (key == "deltas") {
      config.deltas = parse_delta_list(value);
    } else if (key == "n_values") {
      config.n_values = parse_int_list(value);
    } else if (key == "m_period") {
      config.m_period = parse_int(value);
    } else if (key == "families") {
      config.families.clear();
      for (const auto& f : split(value, ',')) config.families.push_back(parse_family(f));
    } else if (key == "windows") {
      config.windows.clear();
      for (const auto& w : split(value, ',')) config.windows.push_back(parse_window_kind(w));
    } else if (key == "trials") {
      config.trials = parse_int(value);
    } else if (key == "base_seed") {
      const std::string t = trim(value);
      std::uint64_t seed = 0;
      auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), seed);
      if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
        throw ConfigurationError("cannot parse base_seed '" + t + "'");
      }
      config.base_seed = seed;
    } else if (key == "grid_points") {
      config.grid_points = parse_int(value);
    } else if (key == "min_sep") {
      config.nodes.min_sep = parse_number(trim(value), key);
    } else if (key == "max_perturb") {
      config.nodes.max_perturb = parse_number(trim(value), key);
    } else if (key == "min_gap") {
      config.nodes.min_gap = parse_number(trim(value), key);
    } else if (key == "allow_out_of_theory") {
      config.allow_out_of_theory = parse_bool(value);
    } else {
      throw ConfigurationError("unknown config key '" + key + "'");
    }
  }
}

}  // namespace sinhreg::cli
