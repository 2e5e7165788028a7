#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace firmnet {

// Interns external firm keys into dense 0-based ids so that per-node state
// (cascade probabilities, failure bits) can live in flat vectors. The mapping
// is a bijection; ids are assigned in first-seen order.
class FirmTable {
 public:
  uint32_t intern(std::string_view key);
  std::optional<uint32_t> find(std::string_view key) const;

  const std::string& key(uint32_t id) const { return keys_[id]; }
  uint32_t size() const { return static_cast<uint32_t>(keys_.size()); }

  // Country is ISO-3166 alpha-2, "" when missing, "??" when unrecognised.
  void set_country(uint32_t id, std::string code);
  const std::string& country(uint32_t id) const;

  std::vector<std::string> keys_snapshot() const { return keys_; }
  std::vector<std::string> countries_snapshot() const;

 private:
  std::vector<std::string> keys_;
  std::vector<std::string> countries_;
  std::unordered_map<std::string, uint32_t> index_;
};

}  // namespace firmnet
