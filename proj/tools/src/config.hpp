#pragma once

#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <vector>

namespace glide::cli {

// Flat key=value settings: file first, then --set, then explicit flags.
class Config {
public:
  void load_file(const std::string& path);
  void apply(const std::string& assignment);  // "key=value"
  void set(const std::string& key, const std::string& value) { kv_[key] = value; }
  void set_default(const std::string& key, const std::string& value) { kv_.try_emplace(key, value); }

  bool has(const std::string& key) const { return kv_.count(key) > 0; }
  std::string str(const std::string& key) const;  // throws when missing
  std::string str(const std::string& key, const std::string& fallback) const;
  double num(const std::string& key) const;
  double num(const std::string& key, double fallback) const;
  long integer(const std::string& key, long fallback) const;
  std::uint64_t seed() const;
  std::vector<double> list(const std::string& key) const;

  const std::map<std::string, std::string>& values() const { return kv_; }

  // "# glide <version>", mode, seed and every setting except the output path.
  void write_header(std::ostream& out, const std::string& mode) const;

private:
  std::map<std::string, std::string> kv_;
};

struct Grid {
  int nt = 1, nx = 1, ny = 1;
};
Grid parse_grid(const std::string& spec);  // "TxXxY"

struct Range {
  double lo = 0.0, hi = 0.0;
};
Range parse_range(const std::string& spec);  // "lo:hi"

}  // namespace glide::cli
