#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace rewire {

struct ManifestError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Declarative run manifest: "key = value" lines, '#' comments, lists
/// comma-separated. One manifest describes one figure/table artifact.
class Manifest {
 public:
  static Manifest parse(const std::string& text);
  static Manifest load(const std::string& path);

  bool has(const std::string& key) const { return kv_.count(key) > 0; }

  std::string get_string(const std::string& key) const;
  std::string get_string(const std::string& key, const std::string& dflt) const;
  long get_int(const std::string& key) const;
  long get_int(const std::string& key, long dflt) const;
  double get_double(const std::string& key) const;
  double get_double(const std::string& key, double dflt) const;
  std::vector<double> get_double_list(const std::string& key) const;
  std::vector<int> get_int_list(const std::string& key) const;

  /// FNV-1a over the raw manifest text.
  std::uint64_t hash() const { return hash_; }

 private:
  std::map<std::string, std::string> kv_;
  std::uint64_t hash_ = 0;
};

}  // namespace rewire
