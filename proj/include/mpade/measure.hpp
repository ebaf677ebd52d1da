#pragma once

#include <functional>
#include <string>
#include <vector>

#include "mpade/numerics.hpp"

namespace mpade {

struct Interval {
  double alpha = -1.0;
  double beta = 1.0;
  double dist(Complex z) const;
};

enum class WeightName { Uniform, Chebyshev1, Jacobi };

struct WeightSpec {
  WeightName name = WeightName::Chebyshev1;
  double a = 0.0;  // Jacobi exponent at beta: (beta - t)^a
  double b = 0.0;  // Jacobi exponent at alpha: (t - alpha)^b
  int quad_order = 200;
};

/// Finite positive measure on an interval. Weight measures are discretized at
/// construction with the Gauss rule matched to the weight, so every measure is
/// held as nodes and positive masses.
class Measure {
 public:
  static Measure discrete(Interval iv, std::vector<double> points, std::vector<double> masses);
  /// Uniform: dt. Chebyshev1: (1/pi)((t-alpha)(beta-t))^{-1/2} dt (probability).
  /// Jacobi(a,b): (1-x)^a (1+x)^b dx in the affine variable x in [-1,1].
  static Measure weight(Interval iv, WeightSpec spec);

  const Interval& interval() const { return iv_; }
  bool is_discrete() const { return discrete_; }
  const WeightSpec& weight_spec() const { return spec_; }
  double mass() const { return mass_; }
  const std::vector<double>& nodes() const { return t_; }
  const std::vector<double>& masses() const { return w_; }
  std::size_t size() const { return t_.size(); }
  Measure scaled(double factor) const;

 private:
  Interval iv_;
  bool discrete_ = true;
  WeightSpec spec_;
  std::vector<double> t_, w_;
  double mass_ = 0.0;
};

Measure normalize(const Measure& m);

struct NodeSequence {
  std::vector<Complex> z;
  double delta = 0.0;

  /// Im z >= delta > 0 and pairwise distinct; throws InvalidArgument.
  void validate() const;
  std::size_t size() const { return z.size(); }
  Complex operator[](std::size_t k) const { return z[k]; }
};

inline constexpr double kSupportTol = 1e-13;

Complex eval_markov(const Measure& m, Complex lambda);
Complex integrate_rational(const Measure& m, const RationalFunction& f);
/// Integral of a sampled function; the caller guarantees regularity on the support.
Complex integrate(const Measure& m, const std::function<Complex(double)>& f);

/// c(n,m) = int dsigma / (A_n B_m), A_n = prod_{k<n}(t - z_k), B_m = prod_{k<m}(t - conj z_k).
DenseMatrix moments_cnm(const Measure& m, const NodeSequence& nodes, int n);

Complex divided_difference(const std::vector<Complex>& points, const std::vector<Complex>& values);

}  // namespace mpade
