#include "rewire/manifest.hpp"

#include <fstream>
#include <sstream>

namespace rewire {

namespace {

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

Manifest Manifest::parse(const std::string& text) {
  Manifest m;
  m.hash_ = fnv1a(text);
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    size_t hash_pos = line.find('#');
    if (hash_pos != std::string::npos) line.erase(hash_pos);
    std::string t = trim(line);
    if (t.empty()) continue;
    size_t eq = t.find('=');
    if (eq == std::string::npos)
      throw ManifestError("manifest line " + std::to_string(lineno) +
                          ": expected 'key = value', got '" + t + "'");
    std::string key = trim(t.substr(0, eq));
    std::string value = trim(t.substr(eq + 1));
    if (key.empty())
      throw ManifestError("manifest line " + std::to_string(lineno) +
                          ": empty key");
    if (m.kv_.count(key))
      throw ManifestError("manifest: duplicate key '" + key + "'");
    m.kv_[key] = value;
  }
  return m;
}

Manifest Manifest::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ManifestError("cannot open manifest: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

std::string Manifest::get_string(const std::string& key) const {
  auto it = kv_.find(key);
  if (it == kv_.end())
    throw ManifestError("manifest: missing required field '" + key + "'");
  return it->second;
}

std::string Manifest::get_string(const std::string& key,
                                 const std::string& dflt) const {
  auto it = kv_.find(key);
  return it == kv_.end() ? dflt : it->second;
}

long Manifest::get_int(const std::string& key) const {
  const std::string v = get_string(key);
  try {
    size_t pos = 0;
    long out = std::stol(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return out;
  } catch (const std::exception&) {
    throw ManifestError("manifest: field '" + key + "' is not an integer: '" +
                        v + "'");
  }
}

long Manifest::get_int(const std::string& key, long dflt) const {
  return has(key) ? get_int(key) : dflt;
}

double Manifest::get_double(const std::string& key) const {
  const std::string v = get_string(key);
  try {
    size_t pos = 0;
    double out = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return out;
  } catch (const std::exception&) {
    throw ManifestError("manifest: field '" + key + "' is not a number: '" +
                        v + "'");
  }
}

double Manifest::get_double(const std::string& key, double dflt) const {
  return has(key) ? get_double(key) : dflt;
}

std::vector<double> Manifest::get_double_list(const std::string& key) const {
  const std::string v = get_string(key);
  std::vector<double> out;
  std::istringstream in(v);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    try {
      size_t pos = 0;
      out.push_back(std::stod(item, &pos));
      if (pos != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ManifestError("manifest: field '" + key +
                          "' has a non-numeric list item: '" + item + "'");
    }
  }
  if (out.empty())
    throw ManifestError("manifest: field '" + key + "' is an empty list");
  return out;
}

std::vector<int> Manifest::get_int_list(const std::string& key) const {
  auto doubles = get_double_list(key);
  std::vector<int> out;
  for (double d : doubles) {
    int i = static_cast<int>(d);
    if (static_cast<double>(i) != d)
      throw ManifestError("manifest: field '" + key +
                          "' must contain integers");
    out.push_back(i);
  }
  return out;
}

}  // namespace rewire
