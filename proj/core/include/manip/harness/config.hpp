#ifndef MANIP_HARNESS_CONFIG_HPP_
#define MANIP_HARNESS_CONFIG_HPP_

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace manip {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// INI-style sections of `key = value` lines; `#` and `;` start comments.
class IniConfig {
 public:
  static IniConfig load(const std::string& path);
  static IniConfig parse(const std::string& text, const std::string& name = "<string>");

  bool has(const std::string& section, const std::string& key) const;
  const std::map<std::string, std::string>* section(const std::string& name) const;

  std::string get_str(const std::string& section, const std::string& key) const;
  std::string get_str(const std::string& section, const std::string& key,
                      const std::string& fallback) const;
  double get_double(const std::string& section, const std::string& key,
                    double fallback) const;
  double get_double(const std::string& section, const std::string& key) const;
  int get_int(const std::string& section, const std::string& key,
              int fallback) const;
  bool get_bool(const std::string& section, const std::string& key,
                bool fallback) const;
  // Whitespace-separated list of numbers.
  std::vector<double> get_list(const std::string& section,
                               const std::string& key) const;

  std::map<std::string, std::map<std::string, std::string>> sections;
};

}  // namespace manip

#endif  // MANIP_HARNESS_CONFIG_HPP_
