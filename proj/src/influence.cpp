#include "cubekit/influence.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <stdexcept>

namespace cubekit {

namespace {

void check_coordinate(int n, int coordinate) {
  if (coordinate < 0 || coordinate >= n) throw std::invalid_argument("coordinate out of range");
}

int common_arity(std::span<const BoolFn> fs) {
  if (fs.empty()) throw std::invalid_argument("empty function list");
  const int n = fs.front().arity();
  for (const auto& f : fs) {
    if (f.arity() != n) throw std::invalid_argument("functions do not share an arity");
  }
  return n;
}

double order_statistic(std::vector<double> values, int t) {
  if (t < 2 || t > static_cast<int>(values.size())) {
    throw std::invalid_argument("threshold count must lie in [2, number of functions]");
  }
  std::nth_element(values.begin(), values.begin() + (t - 1), values.end(), std::greater<>());
  return values[static_cast<std::size_t>(t - 1)];
}

}  // namespace

InfluenceReport make_report(std::vector<double> values) {
  InfluenceReport r;
  r.values = std::move(values);
  for (std::size_t i = 0; i < r.values.size(); ++i) {
    if (r.values[i] > r.max_value) {
      r.max_value = r.values[i];
      r.argmax = static_cast<int>(i);
    }
  }
  return r;
}

double influence(const BoolFn& f, int coordinate) {
  check_coordinate(f.arity(), coordinate);
  const Mask e = Mask{1} << coordinate;
  double s = 0.0;
  for (Mask x = 0; x < f.size(); ++x) {
    const double diff = f[x] - f[x ^ e];
    s += diff * diff;
  }
  return s / (4.0 * static_cast<double>(f.size()));
}

double influence_fourier(const Spectrum& s, int coordinate) {
  check_coordinate(s.n, coordinate);
  double mass = 0.0;
  for (Mask m = 0; m < s.coeffs.size(); ++m) {
    if (m >> coordinate & 1) mass += s.coeffs[m] * s.coeffs[m];
  }
  return mass;
}

double flip_probability(const BoolFn& f, int coordinate) {
  check_coordinate(f.arity(), coordinate);
  if (!f.is_sign()) throw std::invalid_argument("flip probability needs a sign-valued function");
  const Mask e = Mask{1} << coordinate;
  std::size_t flips = 0;
  for (Mask x = 0; x < f.size(); ++x) flips += f[x] != f[x ^ e];
  return static_cast<double>(flips) / static_cast<double>(f.size());
}

InfluenceReport influences(const BoolFn& f) {
  std::vector<double> v(static_cast<std::size_t>(f.arity()));
  for (int i = 0; i < f.arity(); ++i) v[i] = influence(f, i);
  return make_report(std::move(v));
}

double degree_influence(const Spectrum& s, int coordinate, int degree) {
  check_coordinate(s.n, coordinate);
  if (degree < 0 || degree > s.n) throw std::invalid_argument("degree bound out of range");
  double mass = 0.0;
  for (Mask m = 0; m < s.coeffs.size(); ++m) {
    if ((m >> coordinate & 1) && std::popcount(m) <= degree) mass += s.coeffs[m] * s.coeffs[m];
  }
  return mass;
}

double degree_influence(const BoolFn& f, int coordinate, int degree) {
  return degree_influence(fourier(f), coordinate, degree);
}

InfluenceReport degree_influences(const BoolFn& f, int degree) {
  const Spectrum s = fourier(f);
  std::vector<double> v(static_cast<std::size_t>(f.arity()));
  for (int i = 0; i < f.arity(); ++i) v[i] = degree_influence(s, i, degree);
  return make_report(std::move(v));
}

double cross_influence(std::span<const BoolFn> fs, int coordinate, int t) {
  common_arity(fs);
  std::vector<double> v;
  v.reserve(fs.size());
  for (const auto& f : fs) v.push_back(influence(f, coordinate));
  return order_statistic(std::move(v), t);
}

double degree_cross_influence(std::span<const BoolFn> fs, int coordinate, int degree) {
  common_arity(fs);
  std::vector<double> v;
  v.reserve(fs.size());
  for (const auto& f : fs) v.push_back(degree_influence(f, coordinate, degree));
  return order_statistic(std::move(v), 2);
}

InfluenceReport cross_influences(std::span<const BoolFn> fs, int t) {
  const int n = common_arity(fs);
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[i] = cross_influence(fs, i, t);
  return make_report(std::move(v));
}

}  // namespace cubekit
