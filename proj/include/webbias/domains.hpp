#pragma once

#include <cctype>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace webbias {

/// Canonicalizes a domain token: lowercase, scheme/port/path stripped,
/// leading "www." labels removed. Idempotent.
inline std::string normalize_domain(std::string_view raw) {
  // trim surrounding whitespace (covers trailing \r from CRLF input)
  while (!raw.empty() && std::isspace(static_cast<unsigned char>(raw.front()))) raw.remove_prefix(1);
  while (!raw.empty() && std::isspace(static_cast<unsigned char>(raw.back()))) raw.remove_suffix(1);

  if (auto pos = raw.find("://"); pos != std::string_view::npos) raw.remove_prefix(pos + 3);
  if (auto pos = raw.find_first_of("/?#"); pos != std::string_view::npos) raw = raw.substr(0, pos);
  if (auto pos = raw.find(':'); pos != std::string_view::npos) raw = raw.substr(0, pos);

  std::string out;
  out.reserve(raw.size());
  for (char c : raw) out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));

  std::string_view v = out;
  while (v.size() > 4 && v.substr(0, 4) == "www.") v.remove_prefix(4);
  return std::string(v);
}

struct StringHash {
  using is_transparent = void;
  std::size_t operator()(std::string_view s) const noexcept { return std::hash<std::string_view>{}(s); }
  std::size_t operator()(const std::string& s) const noexcept { return std::hash<std::string_view>{}(s); }
};

/// Bijection between normalized domain names and dense integer ids.
class DomainIndex {
 public:
  /// Returns the id of `name`, interning it if unseen. `name` must already
  /// be normalized.
  std::uint32_t intern(std::string name) {
    auto it = ids_.find(name);
    if (it != ids_.end()) return it->second;
    std::uint32_t id = static_cast<std::uint32_t>(names_.size());
    names_.push_back(std::move(name));
    ids_.emplace(names_.back(), id);
    return id;
  }

  std::optional<std::uint32_t> find(std::string_view name) const {
    auto it = ids_.find(name);
    if (it == ids_.end()) return std::nullopt;
    return it->second;
  }

  const std::string& name(std::uint32_t id) const { return names_[id]; }
  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::uint32_t, StringHash, std::equal_to<>> ids_;
};

}  // namespace webbias
