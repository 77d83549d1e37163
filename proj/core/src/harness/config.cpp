#include "manip/harness/config.hpp"

#include <fstream>
#include <sstream>

namespace manip {

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace

IniConfig IniConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), path);
}

IniConfig IniConfig::parse(const std::string& text, const std::string& name) {
  IniConfig cfg;
  std::istringstream in(text);
  std::string line;
  std::string current;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    size_t comment = line.find_first_of("#;");
    if (comment != std::string::npos) line = line.substr(0, comment);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ConfigError(name + ":" + std::to_string(lineno) +
                          ": unterminated section header");
      }
      current = trim(line.substr(1, line.size() - 2));
      cfg.sections[current];
      continue;
    }
    size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(name + ":" + std::to_string(lineno) +
                        ": expected `key = value`");
    }
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty()) {
      throw ConfigError(name + ":" + std::to_string(lineno) + ": empty key");
    }
    if (current.empty()) {
      throw ConfigError(name + ":" + std::to_string(lineno) +
                        ": key outside any [section]");
    }
    cfg.sections[current][key] = value;
  }
  return cfg;
}

bool IniConfig::has(const std::string& section, const std::string& key) const {
  auto s = sections.find(section);
  return s != sections.end() && s->second.count(key) > 0;
}

const std::map<std::string, std::string>* IniConfig::section(
    const std::string& name) const {
  auto s = sections.find(name);
  return s == sections.end() ? nullptr : &s->second;
}

std::string IniConfig::get_str(const std::string& section,
                               const std::string& key) const {
  auto s = sections.find(section);
  if (s != sections.end()) {
    auto k = s->second.find(key);
    if (k != s->second.end()) return k->second;
  }
  throw ConfigError("missing config key [" + section + "] " + key);
}

std::string IniConfig::get_str(const std::string& section,
                               const std::string& key,
                               const std::string& fallback) const {
  return has(section, key) ? get_str(section, key) : fallback;
}

double IniConfig::get_double(const std::string& section,
                             const std::string& key) const {
  std::string v = get_str(section, key);
  try {
    size_t pos = 0;
    double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ConfigError("config key [" + section + "] " + key +
                      " is not a number: '" + v + "'");
  }
}

double IniConfig::get_double(const std::string& section, const std::string& key,
                             double fallback) const {
  return has(section, key) ? get_double(section, key) : fallback;
}

int IniConfig::get_int(const std::string& section, const std::string& key,
                       int fallback) const {
  if (!has(section, key)) return fallback;
  double d = get_double(section, key);
  int i = static_cast<int>(d);
  if (i != d) {
    throw ConfigError("config key [" + section + "] " + key +
                      " must be an integer");
  }
  return i;
}

bool IniConfig::get_bool(const std::string& section, const std::string& key,
                         bool fallback) const {
  if (!has(section, key)) return fallback;
  std::string v = get_str(section, key);
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigError("config key [" + section + "] " + key +
                    " is not a boolean: '" + v + "'");
}

std::vector<double> IniConfig::get_list(const std::string& section,
                                        const std::string& key) const {
  std::istringstream ls(get_str(section, key));
  std::vector<double> out;
  double v;
  while (ls >> v) out.push_back(v);
  if (!ls.eof()) {
    throw ConfigError("config key [" + section + "] " + key +
                      " is not a number list");
  }
  return out;
}

}  // namespace manip
