#include "config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "glide/errors.hpp"

namespace glide::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

double to_number(const std::string& key, const std::string& v) {
  double out = 0.0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size())
    throw ValidationError(fmt::format("{}: '{}' is not a number", key, v));
  return out;
}

}  // namespace

void Config::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError(fmt::format("cannot read config file {}", path));
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    ++n;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.find('=') == std::string::npos) throw ValidationError(fmt::format("{}:{}: expected key=value", path, n));
    apply(line);
  }
}

void Config::apply(const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) throw ValidationError(fmt::format("expected key=value, got '{}'", assignment));
  const std::string key = trim(assignment.substr(0, eq));
  if (key.empty()) throw ValidationError(fmt::format("empty key in '{}'", assignment));
  kv_[key] = trim(assignment.substr(eq + 1));
}

std::string Config::str(const std::string& key) const {
  auto it = kv_.find(key);
  if (it == kv_.end()) throw ValidationError(fmt::format("missing setting '{}'", key));
  return it->second;
}

std::string Config::str(const std::string& key, const std::string& fallback) const {
  auto it = kv_.find(key);
  return it == kv_.end() ? fallback : it->second;
}

double Config::num(const std::string& key) const { return to_number(key, str(key)); }

double Config::num(const std::string& key, double fallback) const {
  return has(key) ? to_number(key, str(key)) : fallback;
}

long Config::integer(const std::string& key, long fallback) const {
  if (!has(key)) return fallback;
  const std::string v = str(key);
  long out = 0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size())
    throw ValidationError(fmt::format("{}: '{}' is not an integer", key, v));
  return out;
}

std::uint64_t Config::seed() const {
  const std::string v = str("seed", "0");
  std::uint64_t out = 0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size()) throw ValidationError(fmt::format("seed: '{}' is invalid", v));
  return out;
}

std::vector<double> Config::list(const std::string& key) const {
  std::vector<double> out;
  std::stringstream ss(str(key));
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(to_number(key, trim(item)));
  if (out.empty()) throw ValidationError(fmt::format("{}: empty list", key));
  return out;
}

void Config::write_header(std::ostream& out, const std::string& mode) const {
  out << "# glide " << GLIDE_VERSION << "\n";
  out << "# mode=" << mode << "\n";
  out << "# seed=" << seed() << "\n";
  for (const auto& [k, v] : kv_)
    if (k != "seed" && k != "out") out << "# " << k << "=" << v << "\n";
}

Grid parse_grid(const std::string& spec) {
  std::vector<int> n;
  std::stringstream ss(spec);
  std::string part;
  bool ok = true;
  while (std::getline(ss, part, 'x')) {
    int v = 0;
    const auto [p, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    ok = ok && ec == std::errc() && p == part.data() + part.size() && v >= 1;
    n.push_back(v);
  }
  if (!ok || n.size() != 3) throw ValidationError(fmt::format("grid '{}' must look like TxXxY with positive counts", spec));
  return {n[0], n[1], n[2]};
}

Range parse_range(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) throw ValidationError(fmt::format("range '{}' must look like lo:hi", spec));
  Range r{to_number("range", trim(spec.substr(0, colon))), to_number("range", trim(spec.substr(colon + 1)))};
  if (!(r.lo <= r.hi)) throw ValidationError(fmt::format("range '{}' is reversed", spec));
  return r;
}

}  // namespace glide::cli
