#pragma once

// Field extraction that records every problem instead of stopping at
// the first one.

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "rulplan/errors.hpp"

namespace rulplan::detail {

class FieldReader {
 public:
  FieldReader(const nlohmann::json& doc, std::string path,
              std::vector<Violation>& out,
              std::initializer_list<std::string_view> allowed)
      : doc_(doc), path_(std::move(path)), out_(out) {
    if (!doc_.is_object()) {
      report("", "must be a JSON object");
      ok_ = false;
      return;
    }
    for (const auto& item : doc_.items()) {
      bool known = false;
      for (auto name : allowed) known = known || item.key() == name;
      if (!known) report(item.key(), "unknown field");
    }
  }

  bool is_object() const noexcept { return ok_; }

  std::string field_path(std::string_view key) const {
    if (path_.empty()) return std::string(key);
    if (key.empty()) return path_;
    return path_ + "." + std::string(key);
  }

  void report(std::string_view key, std::string reason) {
    out_.push_back({field_path(key), std::move(reason)});
  }

  const nlohmann::json* find(std::string_view key, bool required) {
    if (!ok_) return nullptr;
    auto it = doc_.find(std::string(key));
    if (it == doc_.end()) {
      if (required) report(key, "is required");
      return nullptr;
    }
    return &*it;
  }

  std::optional<double> number(std::string_view key, bool required) {
    const auto* v = find(key, required);
    if (v == nullptr) return std::nullopt;
    if (!v->is_number()) {
      report(key, "must be a number");
      return std::nullopt;
    }
    const double d = v->get<double>();
    if (!std::isfinite(d)) {
      report(key, "must be finite");
      return std::nullopt;
    }
    return d;
  }

  std::optional<bool> boolean(std::string_view key, bool required) {
    const auto* v = find(key, required);
    if (v == nullptr) return std::nullopt;
    if (!v->is_boolean()) {
      report(key, "must be a boolean");
      return std::nullopt;
    }
    return v->get<bool>();
  }

  std::optional<std::string> string(std::string_view key, bool required) {
    const auto* v = find(key, required);
    if (v == nullptr) return std::nullopt;
    if (!v->is_string()) {
      report(key, "must be a string");
      return std::nullopt;
    }
    return v->get<std::string>();
  }

  std::optional<std::uint64_t> count(std::string_view key, bool required) {
    const auto* v = find(key, required);
    if (v == nullptr) return std::nullopt;
    if (!v->is_number_unsigned() &&
        !(v->is_number_integer() && v->get<std::int64_t>() >= 0)) {
      report(key, "must be a non-negative integer");
      return std::nullopt;
    }
    return v->get<std::uint64_t>();
  }

 private:
  const nlohmann::json& doc_;
  std::string path_;
  std::vector<Violation>& out_;
  bool ok_ = true;
};

}  // namespace rulplan::detail
