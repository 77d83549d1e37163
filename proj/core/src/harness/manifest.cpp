#include "manip/harness/manifest.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace manip {

uint64_t content_hash(const std::string& data) {
  uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

uint64_t file_hash(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot hash missing file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return content_hash(ss.str());
}

std::string hash_hex(uint64_t hash) {
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(hash));
  return buf;
}

void write_manifest(
    const std::vector<std::pair<std::string, std::string>>& entries,
    const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write manifest: " + path);
  for (const auto& [key, value] : entries) {
    out << key << " = " << value << "\n";
  }
}

}  // namespace manip
