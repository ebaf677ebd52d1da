#pragma once

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "mpade/measure.hpp"
#include "mpade/schur.hpp"

namespace mpade::fixtures {

using namespace std::complex_literals;

// (delta_{-1} + delta_{1}) / 2, phi(l) = l / (1 - l^2)
inline Measure two_point() { return Measure::discrete({-1.0, 1.0}, {-1.0, 1.0}, {0.5, 0.5}); }

inline Measure chebyshev(int order = 200) {
  WeightSpec s;
  s.name = WeightName::Chebyshev1;
  s.quad_order = order;
  return Measure::weight({-1.0, 1.0}, s);
}

inline Measure uniform(int order = 200) {
  WeightSpec s;
  s.name = WeightName::Uniform;
  s.quad_order = order;
  return normalize(Measure::weight({-1.0, 1.0}, s));
}

// twelve irregular atoms, enough for a chain of eleven steps
inline Measure scattered() {
  std::vector<double> t, w;
  for (int i = 0; i < 12; ++i) {
    t.push_back(-0.95 + 1.9 * std::pow(i / 11.0, 1.3));
    w.push_back(1.0 + 0.5 * std::sin(3.0 * i));
  }
  return normalize(Measure::discrete({-1.0, 1.0}, t, w));
}

// z_k = base (1 + k spacing) i
inline NodeSequence vertical(int count, double base = 1.0, double spacing = 0.25) {
  NodeSequence ns;
  for (int k = 0; k < count; ++k) ns.z.push_back(Complex(0.0, base * (1.0 + k * spacing)));
  ns.delta = 0.5 * base;
  return ns;
}

// z_k = base exp(i pi (k + 1/2) / count)
inline NodeSequence arc(int count, double base) {
  NodeSequence ns;
  for (int k = 0; k < count; ++k) ns.z.push_back(std::polar(base, M_PI * (k + 0.5) / count));
  ns.delta = 0.5 * base * std::sin(M_PI * 0.5 / count);
  return ns;
}

// height above Chebyshev points of [-width, width], taken from alternating ends
inline NodeSequence strip(int count, double height = 0.2, double width = 0.9) {
  NodeSequence ns;
  for (int k = 0; k < count; ++k) {
    const int i = k % 2 == 0 ? k / 2 : count - 1 - k / 2;
    ns.z.push_back(Complex(width * std::cos(M_PI * (i + 0.5) / count), height));
  }
  ns.delta = 0.5 * height;
  return ns;
}

inline std::vector<Complex> circle(int count, double radius, Complex center = 0.0, double phase = 0.0) {
  std::vector<Complex> g;
  for (int k = 0; k < count; ++k) g.push_back(center + std::polar(radius, 2.0 * M_PI * (k + phase) / count));
  return g;
}

// points in the upper half plane at distance at least 0.2 from [-1, 1]
inline std::vector<Complex> random_upper(int count, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> re(-2.5, 2.5), im(0.2, 3.0);
  std::vector<Complex> g;
  for (int k = 0; k < count; ++k) g.emplace_back(re(rng), im(rng));
  return g;
}

inline Complex two_point_phi(Complex l) { return l / (1.0 - l * l); }

// -1 / sqrt(l^2 - 1) with the branch that behaves like -1/l at infinity
inline Complex chebyshev_phi(Complex l) { return -1.0 / (std::sqrt(l - 1.0) * std::sqrt(l + 1.0)); }

}  // namespace mpade::fixtures
