#pragma once

#include <vector>

#include "cubekit/bool_fn.hpp"
#include "oracle.hpp"

inline oracle::Table table(const cubekit::BoolFn& f) { return {f.values().begin(), f.values().end()}; }

inline std::vector<oracle::Table> tables(const std::vector<cubekit::BoolFn>& fs) {
  std::vector<oracle::Table> out;
  for (const auto& f : fs) out.push_back(table(f));
  return out;
}

inline constexpr double kTol = 1e-9;
