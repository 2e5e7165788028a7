#include "firmnet/firm_table.hpp"

namespace firmnet {

uint32_t FirmTable::intern(std::string_view key) {
  auto it = index_.find(std::string(key));
  if (it != index_.end()) return it->second;
  uint32_t id = static_cast<uint32_t>(keys_.size());
  keys_.emplace_back(key);
  index_.emplace(keys_.back(), id);
  return id;
}

std::optional<uint32_t> FirmTable::find(std::string_view key) const {
  auto it = index_.find(std::string(key));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

void FirmTable::set_country(uint32_t id, std::string code) {
  if (countries_.size() <= id) countries_.resize(keys_.size());
  countries_[id] = std::move(code);
}

const std::string& FirmTable::country(uint32_t id) const {
  static const std::string empty;
  if (id >= countries_.size()) return empty;
  return countries_[id];
}

std::vector<std::string> FirmTable::countries_snapshot() const {
  std::vector<std::string> out = countries_;
  out.resize(keys_.size());
  return out;
}

}  // namespace firmnet
