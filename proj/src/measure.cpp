#include "mpade/measure.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "mpade/error.hpp"

namespace mpade {

namespace {

// Golub-Welsch for the Jacobi weight (1-x)^a (1+x)^b on [-1,1].
void gauss_jacobi(int n, double a, double b, std::vector<double>& x, std::vector<double>& w) {
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    const double s = 2.0 * k + a + b;
    j(k, k) = (s == 0.0) ? (b - a) / (a + b + 2.0) : (b * b - a * a) / (s * (s + 2.0));
    if (k + 1 < n) {
      const double kk = k + 1.0;
      const double t = 2.0 * kk + a + b;
      // for kk = 1 the factor (kk + a + b) cancels against (t - 1)
      const double v = (k == 0) ? 4.0 * (1.0 + a) * (1.0 + b) / (t * t * (t + 1.0))
                                : 4.0 * kk * (kk + a) * (kk + b) * (kk + a + b) / (t * t * (t + 1.0) * (t - 1.0));
      j(k, k + 1) = j(k + 1, k) = std::sqrt(v);
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(j);
  const double mu0 = std::exp((a + b + 1.0) * std::log(2.0) + std::lgamma(a + 1.0) + std::lgamma(b + 1.0) -
                              std::lgamma(a + b + 2.0));
  x.resize(n);
  w.resize(n);
  for (int k = 0; k < n; ++k) {
    x[k] = es.eigenvalues()(k);
    const double v = es.eigenvectors()(0, k);
    w[k] = mu0 * v * v;
  }
}

}  // namespace

double Interval::dist(Complex z) const {
  const double x = std::clamp(z.real(), alpha, beta);
  return std::abs(z - Complex(x, 0.0));
}

Measure Measure::discrete(Interval iv, std::vector<double> points, std::vector<double> masses) {
  if (!(iv.alpha < iv.beta)) throw Error(Errc::InvalidArgument, "interval requires alpha < beta");
  if (points.size() != masses.size() || points.empty())
    throw Error(Errc::InvalidArgument, "points and masses must be nonempty and of equal length");
  Measure m;
  m.iv_ = iv;
  m.discrete_ = true;
  for (std::size_t k = 0; k < points.size(); ++k) {
    if (points[k] < iv.alpha || points[k] > iv.beta)
      throw Error(Errc::InvalidArgument, "point outside interval");
    if (!(masses[k] > 0)) throw Error(Errc::InvalidArgument, "masses must be positive");
    m.mass_ += masses[k];
  }
  m.t_ = std::move(points);
  m.w_ = std::move(masses);
  return m;
}

Measure Measure::weight(Interval iv, WeightSpec spec) {
  if (!(iv.alpha < iv.beta)) throw Error(Errc::InvalidArgument, "interval requires alpha < beta");
  if (spec.quad_order < 1) throw Error(Errc::InvalidArgument, "quad_order must be positive");
  const int n = spec.quad_order;
  const double c = 0.5 * (iv.alpha + iv.beta), h = 0.5 * (iv.beta - iv.alpha);
  std::vector<double> x, w;
  switch (spec.name) {
    case WeightName::Chebyshev1:
      x.resize(n);
      w.assign(n, 1.0 / n);
      for (int k = 0; k < n; ++k) x[k] = -std::cos((2.0 * k + 1.0) * std::numbers::pi / (2.0 * n));
      break;
    case WeightName::Uniform:
      gauss_jacobi(n, 0.0, 0.0, x, w);
      for (auto& v : w) v *= h;
      break;
    case WeightName::Jacobi:
      if (!(spec.a > -1.0 && spec.b > -1.0)) throw Error(Errc::InvalidArgument, "Jacobi exponents must exceed -1");
      gauss_jacobi(n, spec.a, spec.b, x, w);
      break;
  }
  Measure m;
  m.iv_ = iv;
  m.discrete_ = false;
  m.spec_ = spec;
  m.t_.resize(n);
  for (int k = 0; k < n; ++k) m.t_[k] = c + h * x[k];
  m.w_ = std::move(w);
  for (double v : m.w_) {
    if (!(v > 0)) throw Error(Errc::NumericFailure, "nonpositive quadrature weight");
    m.mass_ += v;
  }
  return m;
}

Measure Measure::scaled(double factor) const {
  if (!(factor > 0)) throw Error(Errc::InvalidArgument, "scale factor must be positive");
  Measure r = *this;
  r.mass_ = 0.0;
  for (auto& v : r.w_) {
    v *= factor;
    r.mass_ += v;
  }
  return r;
}

Measure normalize(const Measure& m) {
  if (!(m.mass() > 0)) throw Error(Errc::InvalidArgument, "measure has no mass");
  if (m.mass() == 1.0) return m;
  return m.scaled(1.0 / m.mass());
}

void NodeSequence::validate() const {
  if (!(delta > 0)) throw Error(Errc::InvalidArgument, "delta must be positive");
  for (std::size_t k = 0; k < z.size(); ++k) {
    if (z[k].imag() < delta) throw Error(Errc::InvalidArgument, "node below the delta line");
    for (std::size_t j = 0; j < k; ++j)
      if (std::abs(z[k] - z[j]) <= 1e-14 * (1.0 + std::abs(z[k])))
        throw Error(Errc::InvalidArgument, "nodes not distinct");
  }
}

Complex eval_markov(const Measure& m, Complex lambda) {
  if (m.interval().dist(lambda) <= kSupportTol) throw Error(Errc::PointOnSupport, "evaluation point on the interval");
  Complex s{};
  const auto& t = m.nodes();
  const auto& w = m.masses();
  for (std::size_t k = 0; k < t.size(); ++k) s += w[k] / (t[k] - lambda);
  return s;
}

Complex integrate(const Measure& m, const std::function<Complex(double)>& f) {
  Complex s{};
  const auto& t = m.nodes();
  const auto& w = m.masses();
  for (std::size_t k = 0; k < t.size(); ++k) s += w[k] * f(t[k]);
  return s;
}

Complex integrate_rational(const Measure& m, const RationalFunction& f) {
  if (f.den.is_zero()) throw Error(Errc::InvalidArgument, "zero denominator polynomial");
  std::vector<Complex> poles = f.poles ? *f.poles : (f.den.degree() >= 1 ? poly_roots(f.den) : std::vector<Complex>{});
  for (Complex p : poles)
    if (m.interval().dist(p) < 1e-10) throw Error(Errc::PoleOnSupport, "pole on the interval");
  return integrate(m, [&](double t) { return f(Complex(t, 0.0)); });
}

DenseMatrix moments_cnm(const Measure& m, const NodeSequence& nodes, int n) {
  if (n < 0 || static_cast<std::size_t>(n) > nodes.size())
    throw Error(Errc::InvalidArgument, "moment table larger than node sequence");
  for (int k = 0; k < n; ++k)
    if (m.interval().dist(nodes[k]) < 1e-10) throw Error(Errc::PoleOnSupport, "node on the interval");
  DenseMatrix c = DenseMatrix::Zero(n + 1, n + 1);
  const auto& t = m.nodes();
  const auto& w = m.masses();
  std::vector<Complex> ia(n + 1), ib(n + 1);
  for (std::size_t i = 0; i < t.size(); ++i) {
    ia[0] = ib[0] = 1.0;
    for (int k = 1; k <= n; ++k) {
      ia[k] = ia[k - 1] / (t[i] - nodes[k - 1]);
      ib[k] = ib[k - 1] / (t[i] - std::conj(nodes[k - 1]));
    }
    for (int a = 0; a <= n; ++a)
      for (int b = 0; b <= n; ++b) c(a, b) += w[i] * ia[a] * ib[b];
  }
  return c;
}

Complex divided_difference(const std::vector<Complex>& points, const std::vector<Complex>& values) {
  if (points.size() != values.size() || points.empty())
    throw Error(Errc::InvalidArgument, "divided difference needs matching nonempty lists");
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (points[i] == points[j]) throw Error(Errc::DuplicatePoints, "repeated point");
  std::vector<Complex> d(values);
  const std::size_t n = points.size();
  for (std::size_t k = 1; k < n; ++k)
    for (std::size_t i = n - 1; i >= k; --i) d[i] = (d[i] - d[i - 1]) / (points[i] - points[i - k]);
  return d[n - 1];
}

}  // namespace mpade
