#pragma once

#include <span>
#include <vector>

#include "cubekit/bool_fn.hpp"

namespace cubekit {

/// Per-coordinate influence values with the (smallest-index) maximizer.
struct InfluenceReport {
  std::vector<double> values;
  int argmax = 0;
  double max_value = 0.0;
};

InfluenceReport make_report(std::vector<double> values);

/// I_i(f) = 1/4 E_x (f(x) - f(x + e_i))^2, coordinate 0-based.
double influence(const BoolFn& f, int coordinate);
/// Same quantity as Fourier mass on sets containing the coordinate.
double influence_fourier(const Spectrum& s, int coordinate);
/// Pr_x[f(x) != f(x + e_i)]; sign functions only.
double flip_probability(const BoolFn& f, int coordinate);

InfluenceReport influences(const BoolFn& f);

/// Fourier mass on sets S containing the coordinate with |S| <= degree.
double degree_influence(const Spectrum& s, int coordinate, int degree);
double degree_influence(const BoolFn& f, int coordinate, int degree);
InfluenceReport degree_influences(const BoolFn& f, int degree);

/// t-th largest influence of the coordinate across the list (t >= 2).
double cross_influence(std::span<const BoolFn> fs, int coordinate, int t);
/// Degree-bounded cross-influence with t = 2.
double degree_cross_influence(std::span<const BoolFn> fs, int coordinate, int degree);

InfluenceReport cross_influences(std::span<const BoolFn> fs, int t);

}  // namespace cubekit
