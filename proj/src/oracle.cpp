#include "mpade/oracle.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/SVD>

#include "mpade/error.hpp"
#include "mpade/recurrence.hpp"

namespace mpade {

namespace {

constexpr double kRankGap = 1e-10;

/// Chebyshev polynomials in s = (z - c) / rho as monomial polynomials in z.
std::vector<Polynomial> chebyshev_basis(int deg, double c, double rho) {
  std::vector<Polynomial> t{Polynomial::constant(1.0)};
  const Polynomial s = Polynomial({-c / rho, 1.0 / rho});
  if (deg >= 1) t.push_back(s);
  for (int k = 1; k < deg; ++k) t.push_back(s * t[k] * 2.0 - t[k - 1]);
  return t;
}

std::vector<Complex> chebyshev_values(int deg, Complex s) {
  std::vector<Complex> v{1.0};
  if (deg >= 1) v.push_back(s);
  for (int k = 1; k < deg; ++k) v.push_back(2.0 * s * v[k] - v[k - 1]);
  return v;
}

Polynomial combine(const std::vector<Polynomial>& basis, const std::vector<Complex>& coeffs) {
  Polynomial p;
  for (std::size_t k = 0; k < coeffs.size(); ++k) p = p + basis[k] * coeffs[k];
  return p;
}

void check_common_roots(const Polynomial& q, const Polynomial& p) {
  if (q.degree() < 1 || p.degree() < 1) return;
  for (Complex r : poly_roots(p)) {
    double scale = 0.0;
    for (int k = 0; k <= q.degree(); ++k) scale += std::abs(q.coeff(k)) * std::pow(std::abs(r), k);
    if (std::abs(q(r)) <= 1e-8 * scale)
      throw Error(Errc::NormalCaseViolation, "numerator and denominator share a zero");
  }
}

Complex dd_normalizer(const std::vector<Complex>& s, const std::vector<Complex>& v) {
  double n = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    double prod = 1.0;
    for (std::size_t k = 0; k < s.size(); ++k)
      if (k != i) prod *= std::abs(s[i] - s[k]);
    n += std::abs(v[i]) / prod;
  }
  return n;
}

}  // namespace

InterpolationProblem make_problem(const Measure& m, const NodeSequence& nodes, int n) {
  if (n < 0 || static_cast<int>(nodes.size()) < n + 1)
    throw Error(Errc::InvalidArgument, "problem needs n + 1 nodes");
  InterpolationProblem p;
  p.num_degree = n;
  p.den_degree = n + 1;
  p.mass = m.mass();
  p.interval = m.interval();
  for (int k = 0; k <= n; ++k) {
    p.nodes.push_back(nodes[k]);
    p.values.push_back(eval_markov(m, nodes[k]));
  }
  return p;
}

PadeSolution newton_pade_detail(const InterpolationProblem& prob) {
  const int nq = prob.num_degree + 1, np = prob.den_degree + 1, nk = static_cast<int>(prob.nodes.size());
  if (prob.values.size() != prob.nodes.size()) throw Error(Errc::InvalidArgument, "values do not match nodes");
  if (2 * nk != nq + np - 1) throw Error(Errc::InvalidArgument, "node count does not match the degrees");
  for (int i = 0; i < nk; ++i)
    for (int k = 0; k < i; ++k)
      if (std::abs(prob.nodes[i] - prob.nodes[k]) < 1e-14 || std::abs(prob.nodes[i] - std::conj(prob.nodes[k])) < 1e-14)
        throw Error(Errc::DuplicatePoints, "interpolation nodes coincide");

  const double c = 0.5 * (prob.interval.alpha + prob.interval.beta);
  const double rho = 0.5 * (prob.interval.beta - prob.interval.alpha);
  const int deg = std::max(prob.num_degree, prob.den_degree);
  Eigen::MatrixXd A(2 * nk, nq + np);
  for (int k = 0; k < nk; ++k) {
    const auto t = chebyshev_values(deg, (prob.nodes[k] - c) / rho);
    Eigen::VectorXcd row(nq + np);
    for (int i = 0; i < nq; ++i) row(i) = t[i];
    for (int i = 0; i < np; ++i) row(nq + i) = -prob.values[k] * t[i];
    const Eigen::VectorXd re = row.real(), im = row.imag();
    A.row(2 * k) = re.transpose() / std::max(re.norm(), 1e-300);
    A.row(2 * k + 1) = im.transpose() / std::max(im.norm(), 1e-300);
  }
  const Eigen::VectorXd colscale = A.colwise().norm().cwiseMax(1e-300).cwiseInverse().transpose();
  A = A * colscale.asDiagonal();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  PadeSolution out;
  out.rank_gap = sv(sv.size() - 1) / sv(0);
  if (out.rank_gap < kRankGap) throw Error(Errc::RankDeficient, "interpolation system has a multi-dimensional kernel");
  const Eigen::VectorXd x = colscale.asDiagonal() * svd.matrixV().col(nq + np - 1);
  if (std::abs(x(nq + np - 1)) < 1e-12 * x.norm())
    throw Error(Errc::NormalCaseViolation, "denominator degree drops");

  const auto basis = chebyshev_basis(deg, c, rho);
  std::vector<Complex> qc(nq), pc(np);
  for (int i = 0; i < nq; ++i) qc[i] = x(i);
  for (int i = 0; i < np; ++i) pc[i] = x(nq + i);
  Polynomial Q = combine(basis, qc), P = combine(basis, pc);
  const Complex lead = P.lead();
  Q = Q * (1.0 / lead);
  P = P * (1.0 / lead);
  for (int k = 0; k < nk; ++k) {
    const Complex pz = P(prob.nodes[k]);
    if (std::abs(Q(prob.nodes[k]) - prob.values[k] * pz) > 1e-9 * (1.0 + std::abs(prob.values[k])) * std::abs(pz))
      throw Error(Errc::NumericFailure, "interpolation residual above tolerance at node " + std::to_string(k));
  }
  check_common_roots(Q, P);
  out.r = RationalFunction{Q, P, std::nullopt};
  return out;
}

RationalFunction newton_pade_solve(const InterpolationProblem& prob) { return newton_pade_detail(prob).r; }

PadeSolution pade_interpolate(const std::vector<Complex>& nodes, const std::vector<Complex>& values, int m, int n) {
  const int nk = static_cast<int>(nodes.size());
  if (nk != m + n + 1 || values.size() != nodes.size())
    throw Error(Errc::InvalidArgument, "need m + n + 1 nodes and values");
  Complex c = 0.0;
  for (Complex z : nodes) c += z;
  c /= static_cast<double>(nk);
  double rho = 1e-300;
  for (Complex z : nodes) rho = std::max(rho, std::abs(z - c));
  DenseMatrix A(nk, m + n + 2);
  for (int k = 0; k < nk; ++k) {
    Complex pw = 1.0;
    const Complex s = (nodes[k] - c) / rho;
    for (int i = 0; i <= std::max(m, n); ++i) {
      if (i <= m) A(k, i) = pw;
      if (i <= n) A(k, m + 1 + i) = -values[k] * pw;
      pw *= s;
    }
    A.row(k) /= std::max(A.row(k).norm(), 1e-300);
  }
  Eigen::JacobiSVD<DenseMatrix> svd(A, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  PadeSolution out;
  out.rank_gap = sv.size() == 0 ? 1.0 : sv(sv.size() - 1) / sv(0);
  if (nk > 0 && out.rank_gap < kRankGap) throw Error(Errc::RankDeficient, "interpolation kernel is not one-dimensional");
  const CVector x = svd.matrixV().col(m + n + 1);
  // back from the scaled variable: z^k terms of ((z - c) / rho)^i
  auto unscale = [&](int off, int deg) {
    Polynomial p, pw = Polynomial::constant(1.0);
    const Polynomial s({-c / rho, 1.0 / rho});
    for (int i = 0; i <= deg; ++i) {
      p = p + pw * x(off + i);
      pw = pw * s;
    }
    return p;
  };
  Polynomial Q = unscale(0, m), P = unscale(m + 1, n);
  if (P.is_zero()) throw Error(Errc::NormalCaseViolation, "zero denominator");
  const Complex lead = P.lead();
  out.r = RationalFunction{Q * (1.0 / lead), P * (1.0 / lead), std::nullopt};
  return out;
}

double oracle_chain_difference(const SchurChain& chain, int n, const std::vector<Complex>& grid) {
  const RationalFunction r = newton_pade_solve(make_problem(chain.measure, chain.nodes, n));
  double worst = 0.0;
  for (Complex l : grid) worst = std::max(worst, std::abs(r(l) - eval_convergent(chain, n, l)));
  return worst;
}

std::vector<Complex> conjugate_pair_order(const NodeSequence& nodes, int count) {
  std::vector<Complex> s;
  for (int k = 0; static_cast<int>(s.size()) < count; ++k) {
    if (k >= static_cast<int>(nodes.size())) throw Error(Errc::InvalidArgument, "not enough nodes");
    s.push_back(nodes[k]);
    if (static_cast<int>(s.size()) < count) s.push_back(std::conj(nodes[k]));
  }
  return s;
}

CheckReport check_ort_PI(const Polynomial& P, const std::vector<Complex>& nodes, const std::vector<Complex>& F, int n,
                         double tol) {
  if (static_cast<int>(nodes.size()) < 2 * n || F.size() < nodes.size())
    throw Error(Errc::InvalidArgument, "need 2n nodes and values");
  const std::vector<Complex> s(nodes.begin(), nodes.begin() + 2 * n);
  double worst = 0.0;
  for (int j = 0; j < n; ++j) {
    std::vector<Complex> v(2 * n);
    for (int i = 0; i < 2 * n; ++i) v[i] = std::pow(s[i], j) * F[i] * P(s[i]);
    worst = std::max(worst, std::abs(divided_difference(s, v)) / std::abs(dd_normalizer(s, v)));
  }
  return make_report("ort_PI", worst, tol, "n=" + std::to_string(n));
}

BiortPIReport check_biort_PI(const Measure& m, const NodeSequence& nodes, int N, double tol) {
  const std::vector<Complex> s = conjugate_pair_order(nodes, 2 * N + 1);
  std::vector<Complex> F;
  for (Complex z : s) F.push_back(eval_markov(m, z));

  std::vector<Polynomial> P(N + 1), Pt(N + 1);
  P[0] = Pt[0] = Polynomial::constant(1.0);
  for (int n = 1; n <= N; ++n) {
    const std::vector<Complex> x(s.begin(), s.begin() + 2 * n), fx(F.begin(), F.begin() + 2 * n);
    P[n] = pade_interpolate(x, fx, n - 1, n).r.den;
    std::vector<Complex> y(s.begin(), s.begin() + 2 * n - 1), fy(F.begin(), F.begin() + 2 * n - 1);
    y.push_back(s[2 * n]);
    fy.push_back(F[2 * n]);
    Pt[n] = pade_interpolate(y, fy, n - 1, n).r.den;
  }

  BiortPIReport r;
  r.G_dd = r.G_int = DenseMatrix::Zero(N + 1, N + 1);
  for (int n = 0; n <= N; ++n)
    for (int k = 0; k <= N; ++k) {
      std::vector<int> idx{0};
      for (int i = 0; i < n; ++i) idx.push_back(2 * i + 1);
      for (int i = 1; i <= k; ++i) idx.push_back(2 * i);
      std::vector<Complex> pts, vals;
      for (int i : idx) {
        pts.push_back(s[i]);
        vals.push_back(F[i] * P[n](s[i]) * Pt[k](s[i]));
      }
      r.G_dd(n, k) = divided_difference(pts, vals);
      r.G_int(n, k) = integrate(m, [&](double t) {
        Complex v = P[n](t) * Pt[k](t);
        for (Complex p : pts) v /= t - p;
        return v;
      });
    }
  double hmax = 0.0;
  for (int n = 0; n <= N; ++n) hmax = std::max(hmax, std::abs(r.G_dd(n, n)));
  for (int n = 0; n <= N; ++n)
    for (int k = 0; k <= N; ++k) {
      if (n != k) r.max_offdiag = std::max(r.max_offdiag, std::abs(r.G_dd(n, k)) / hmax);
      r.route_diff = std::max(r.route_diff, std::abs(r.G_dd(n, k) - r.G_int(n, k)) / hmax);
    }
  r.pass = r.max_offdiag <= tol && r.route_diff <= tol;
  return r;
}

}  // namespace mpade
