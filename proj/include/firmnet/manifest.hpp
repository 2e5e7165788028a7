#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace firmnet {

inline constexpr const char* kToolVersion = "0.1.0";

// Reproducibility record written next to every command's outputs. The stored
// argv plus input digests are sufficient to re-run bit-identically; timings
// are informational only and excluded from reproducibility comparisons.
struct RunManifest {
  std::string tool = "firmnet";
  std::string version = kToolVersion;
  std::string command;
  std::vector<std::string> argv;
  uint64_t seed = 0;
  int threads = 1;
  std::map<std::string, std::string> config;
  std::map<std::string, std::string> input_digests;  // path -> fnv1a64 hex
  std::vector<std::string> outputs;
  double wall_seconds = 0;

  void write(const std::string& path) const;
  static RunManifest load(const std::string& path);
};

uint64_t fnv1a64_file(const std::string& path);
std::string fnv1a64_hex(uint64_t digest);

}  // namespace firmnet
