#include "mpade/recurrence.hpp"

#include <algorithm>
#include <cmath>

#include "mpade/error.hpp"

namespace mpade {

namespace {

const std::vector<SchurStep> checked_coefficients(const SchurChain& chain, int n) {
  std::vector<SchurStep> c = chain.coefficients();
  if (n < 0 || static_cast<int>(c.size()) < n + 1) throw Error(Errc::ChainTooShort, "chain shorter than n+1 steps");
  return c;
}

// (l - z)(l - conj z) with real coefficients
Polynomial node_quadratic(Complex z) { return Polynomial({std::norm(z), -2.0 * z.real(), 1.0}); }

}  // namespace

PolyPair build_polys(const SchurChain& chain, int n) {
  const auto c = checked_coefficients(chain, n);
  PolyPair pp;
  pp.P = {Polynomial::constant(1.0), Polynomial({-c[0].a1, c[0].a2})};
  pp.Q = {Polynomial(), Polynomial::constant(-1.0)};
  for (int j = 1; j <= n; ++j) {
    const Polynomial lin({-c[j].a1, c[j].a2});
    const Polynomial quad = node_quadratic(c[j - 1].z) * Complex(c[j - 1].b * c[j - 1].b);
    Polynomial p = lin * pp.P[j] - quad * pp.P[j - 1];
    Polynomial q = lin * pp.Q[j] - quad * pp.Q[j - 1];
    p.make_real(1e-10);
    q.make_real(1e-10);
    pp.P.push_back(std::move(p));
    pp.Q.push_back(std::move(q));
  }
  return pp;
}

void recurrence_values(const SchurChain& chain, int n, Complex l, std::vector<Complex>* p, std::vector<Complex>* q) {
  const auto c = checked_coefficients(chain, n);
  std::vector<Complex> P = {1.0, c[0].a2 * l - c[0].a1}, Q = {0.0, -1.0};
  for (int j = 1; j <= n; ++j) {
    const Complex lin = c[j].a2 * l - c[j].a1;
    const Complex quad = c[j - 1].b * c[j - 1].b * (l - c[j - 1].z) * (l - std::conj(c[j - 1].z));
    P.push_back(lin * P[j] - quad * P[j - 1]);
    Q.push_back(lin * Q[j] - quad * Q[j - 1]);
  }
  if (p) *p = std::move(P);
  if (q) *q = std::move(Q);
}

Complex convergent_cf(const SchurChain& chain, int n, Complex l) {
  const auto c = checked_coefficients(chain, n);
  Complex v{};
  for (int j = n; j >= 0; --j) {
    const Complex d = c[j].a2 * l - c[j].a1 + c[j].b * c[j].b * (l - c[j].z) * (l - std::conj(c[j].z)) * v;
    if (d == Complex{}) throw Error(Errc::PoleOfConvergent, "continued fraction denominator vanishes");
    v = -1.0 / d;
  }
  return v;
}

Complex convergent_ratio(const SchurChain& chain, int n, Complex l) {
  std::vector<Complex> p, q;
  recurrence_values(chain, n, l, &p, &q);
  if (p[n + 1] == Complex{}) throw Error(Errc::PoleOfConvergent, "lambda is a zero of P_{n+1}");
  return q[n + 1] / p[n + 1];
}

Complex eval_convergent(const SchurChain& chain, int n, Complex l) {
  const Complex r = convergent_ratio(chain, n, l);
  const Complex cf = convergent_cf(chain, n, l);
  if (std::abs(r - cf) > 1e-9 * (1.0 + std::abs(r)))
    throw Error(Errc::NumericFailure, "recurrence ratio and continued fraction disagree");
  return r;
}

Complex hat_normalize(const SchurChain& chain, Complex u, int j, Complex l) {
  const auto c = chain.coefficients();
  if (j < 0 || j > static_cast<int>(c.size())) throw Error(Errc::ChainTooShort, "normalization index beyond chain");
  Complex d = 1.0;
  for (int k = 0; k < j; ++k) {
    if (std::abs(c[k].z - l) <= 1e-14 * (1.0 + std::abs(l))) throw Error(Errc::NodeCollision, "lambda equals a node");
    d *= c[k].b * (c[k].z - l);
  }
  return u / d;
}

double hat_recurrence_residual(const SchurChain& chain, int j, Complex l) {
  if (j < 1) throw Error(Errc::InvalidArgument, "three-term residual needs j >= 1");
  const auto c = checked_coefficients(chain, j);
  std::vector<Complex> p;
  recurrence_values(chain, j, l, &p, nullptr);
  const Complex up = hat_normalize(chain, p[j + 1], j + 1, l);
  const Complex u0 = hat_normalize(chain, p[j], j, l);
  const Complex um = hat_normalize(chain, p[j - 1], j - 1, l);
  const Complex t1 = c[j].b * (c[j].z - l) * up;
  const Complex t2 = (c[j].a2 * l - c[j].a1) * u0;
  const Complex t3 = c[j - 1].b * (std::conj(c[j - 1].z) - l) * um;
  return std::abs(t1 - t2 + t3) / (std::abs(t1) + std::abs(t2) + std::abs(t3));
}

CheckReport check_np_orthogonality(const SchurChain& chain, const Measure& m, int n, double tol) {
  const auto c = checked_coefficients(chain, n);
  const auto& t = m.nodes();
  const auto& w = m.masses();
  std::vector<Complex> sum(n + 1), abs_sum(n + 1), sum2(n + 1), abs_sum2(n + 1);
  std::vector<Complex> p;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const Complex x(t[i], 0.0);
    recurrence_values(chain, n, x, &p, nullptr);
    double weight = w[i];
    Complex hat = p[n + 1];
    for (int k = 0; k <= n; ++k) {
      weight /= std::norm(x - c[k].z);
      hat /= c[k].b * (c[k].z - x);
    }
    double tj = 1.0;
    for (int j = 0; j <= n; ++j) {
      sum[j] += tj * p[n + 1] * weight;
      abs_sum[j] += std::abs(tj * p[n + 1]) * weight;
      const Complex k = 1.0 / (x - std::conj(c[j].z));
      sum2[j] += w[i] * hat * k;
      abs_sum2[j] += w[i] * std::abs(hat * k);
      tj *= t[i];
    }
  }
  double worst = 0.0;
  int worst_j = 0;
  for (int j = 0; j <= n; ++j) {
    const double r = std::max(std::abs(sum[j]) / std::abs(abs_sum[j]), std::abs(sum2[j]) / std::abs(abs_sum2[j]));
    if (r > worst) {
      worst = r;
      worst_j = j;
    }
  }
  return make_report("np_orthogonality", worst, tol, "n=" + std::to_string(n) + " worst j=" + std::to_string(worst_j));
}

std::vector<double> xi_sequence(const SchurChain& chain, const Measure& m, int n) {
  const auto& nodes = chain.nodes;
  if (n < 0 || static_cast<std::size_t>(n) > nodes.size()) throw Error(Errc::ChainTooShort, "xi index beyond nodes");
  std::vector<double> xi = {0.0};
  const auto& t = m.nodes();
  const auto& w = m.masses();
  for (int j = 1; j <= n; ++j) {
    double num = 0, den = 0, den_abs = 0;
    for (std::size_t i = 0; i < t.size(); ++i) {
      double prod = 1.0;
      for (int k = 0; k < j; ++k) prod *= std::norm(Complex(t[i], 0.0) - nodes[k]);
      const double tj = std::pow(t[i], j);
      den += w[i] * tj / prod;
      den_abs += w[i] * std::abs(tj) / prod;
      num += w[i] * tj * t[i] / (prod * std::norm(Complex(t[i], 0.0) - nodes[j]));
    }
    if (std::abs(den) < 1e-13 * den_abs) throw Error(Errc::DegenerateMoment, "vanishing moment in xi_" + std::to_string(j));
    xi.push_back(num / den);
  }
  return xi;
}

}  // namespace mpade
