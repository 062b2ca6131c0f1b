#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace acid {

//! Flat, typed key-value run configuration. Grammar: one `key = value` per
//! line, `#` starts a comment, keys are dotted lowercase words. Parsing is
//! strict: every key must belong to the schema of the command being run.
class RunConfig {
 public:
  static RunConfig parse_file(const std::string& path);
  static RunConfig parse_string(const std::string& text);

  void set(const std::string& key, const std::string& value);
  bool has(const std::string& key) const;

  std::string get_string(const std::string& key,
                         const std::string& fallback) const;
  std::string require_string(const std::string& key) const;
  double get_double(const std::string& key, double fallback) const;
  double require_double(const std::string& key) const;
  long long get_int(const std::string& key, long long fallback) const;
  long long require_int(const std::string& key) const;
  std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  std::vector<double> get_list(const std::string& key,
                               std::vector<double> fallback) const;
  std::vector<double> require_list(const std::string& key) const;

  //! Rejects keys outside the given command's schema (naming the first
  //! offender).
  void validate_keys(const std::string& command) const;

  //! Canonical text (sorted keys) used for the manifest hash.
  std::string canonical_text() const;

  const std::map<std::string, std::string>& entries() const { return kv_; }

 private:
  std::map<std::string, std::string> kv_;
};

}  // namespace acid
