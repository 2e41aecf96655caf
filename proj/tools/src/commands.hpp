#pragma once

#include <string>

#include "config.hpp"

namespace glide::cli {

struct Output {
  std::string body;     // CSV, written after the header
  std::string summary;  // one line for the terminal
};

Output airy_table(const Config& c);
Output verify_poisson(const Config& c);
Output propagate(const Config& c);
Output parametrix(const Config& c);
Output crosscheck(const Config& c);
Output strichartz_scan(const Config& c);
Output exponents(const Config& c);

}  // namespace glide::cli
