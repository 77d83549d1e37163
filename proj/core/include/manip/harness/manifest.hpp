#ifndef MANIP_HARNESS_MANIFEST_HPP_
#define MANIP_HARNESS_MANIFEST_HPP_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace manip {

// 64-bit FNV-1a content hashes, hex-encoded, for run manifests.
uint64_t content_hash(const std::string& data);
uint64_t file_hash(const std::string& path);
std::string hash_hex(uint64_t hash);

// `key = value` lines; records enough (config hash, seeds, input hashes) to
// reproduce a run exactly.
void write_manifest(const std::vector<std::pair<std::string, std::string>>& entries,
                    const std::string& path);

}  // namespace manip

#endif  // MANIP_HARNESS_MANIFEST_HPP_
