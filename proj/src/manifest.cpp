#include "firmnet/manifest.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "firmnet/errors.hpp"

namespace firmnet {

using nlohmann::json;

void RunManifest::write(const std::string& path) const {
  json j;
  j["tool"] = tool;
  j["version"] = version;
  j["command"] = command;
  j["argv"] = argv;
  j["seed"] = seed;
  j["threads"] = threads;
  j["config"] = config;
  j["input_digests"] = input_digests;
  j["outputs"] = outputs;
  j["wall_seconds"] = wall_seconds;
  std::ofstream out(path);
  if (!out) throw DataError("cannot open file for writing: " + path);
  out << j.dump(2) << '\n';
}

RunManifest RunManifest::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open file: " + path);
  json j = json::parse(in);
  RunManifest m;
  m.tool = j.value("tool", "");
  m.version = j.value("version", "");
  m.command = j.value("command", "");
  m.argv = j.value("argv", std::vector<std::string>{});
  m.seed = j.value("seed", uint64_t{0});
  m.threads = j.value("threads", 1);
  m.config = j.value("config", std::map<std::string, std::string>{});
  m.input_digests = j.value("input_digests", std::map<std::string, std::string>{});
  m.outputs = j.value("outputs", std::vector<std::string>{});
  m.wall_seconds = j.value("wall_seconds", 0.0);
  return m;
}

uint64_t fnv1a64_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open file: " + path);
  uint64_t h = 14695981039346656037ull;
  char buf[1 << 16];
  while (in) {
    in.read(buf, sizeof(buf));
    std::streamsize got = in.gcount();
    for (std::streamsize i = 0; i < got; ++i) {
      h ^= static_cast<unsigned char>(buf[i]);
      h *= 1099511628211ull;
    }
  }
  return h;
}

std::string fnv1a64_hex(uint64_t digest) {
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << digest;
  return os.str();
}

}  // namespace firmnet
