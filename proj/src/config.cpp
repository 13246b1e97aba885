#include "shiftsum/config.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <sstream>

namespace shiftsum {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

int64_t parse_int(const std::string& v, int line, const std::string& key) {
  int64_t out = 0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size())
    throw ConfigError(line, "line " + std::to_string(line) + ": '" + key + "' expects an integer, got '" + v + "'");
  return out;
}

double parse_double(const std::string& v, int line, const std::string& key) {
  std::istringstream is(v);
  double out = 0.0;
  is >> out;
  if (!is || !is.eof())
    throw ConfigError(line, "line " + std::to_string(line) + ": '" + key + "' expects a number, got '" + v + "'");
  return out;
}

}  // namespace

PrecisionPolicy Config::policy(std::vector<std::string>* warnings) const {
  PrecisionPolicy p;
  p.epsilon_abs = epsilon;
  p.epsilon_rel = 10.0 * epsilon;
  p.cutoff_csum = c_max;
  p.cutoff_qseries = q_max;
  const PrecisionPolicy c = p.clamped();
  if (warnings && c.epsilon_abs != p.epsilon_abs) {
    std::ostringstream os;
    os << "epsilon " << epsilon << " is below the floor " << PrecisionPolicy::kEpsilonFloor << "; clamped";
    warnings->push_back(os.str());
  }
  c.validate();
  return c;
}

Config parse_config(std::istream& in, Config base) {
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string s = trim(raw);
    if (s.empty() || s[0] == '#') continue;
    const auto eq = s.find('=');
    if (eq == std::string::npos)
      throw ConfigError(line, "line " + std::to_string(line) + ": expected key=value, got '" + s + "'");
    const std::string key = trim(s.substr(0, eq));
    const std::string val = trim(s.substr(eq + 1));
    if (val.empty()) throw ConfigError(line, "line " + std::to_string(line) + ": empty value for '" + key + "'");
    if (key == "level")
      base.level = parse_int(val, line, key);
    else if (key == "char_index")
      base.char_index = parse_int(val, line, key);
    else if (key == "epsilon")
      base.epsilon = parse_double(val, line, key);
    else if (key == "c_max")
      base.c_max = parse_int(val, line, key);
    else if (key == "q_max")
      base.q_max = parse_int(val, line, key);
    else
      throw ConfigError(line, "line " + std::to_string(line) + ": unknown key '" + key + "'");
  }
  return base;
}

Config load_config(const std::string& path, Config base, std::vector<std::string>* warnings) {
  std::ifstream in(path);
  if (!in) {
    if (warnings) warnings->push_back("config file '" + path + "' not found; using defaults");
    return base;
  }
  return parse_config(in, base);
}

}  // namespace shiftsum
