#include "mpade/pencil.hpp"

#include <algorithm>
#include <cmath>

#include "mpade/error.hpp"

namespace mpade {

namespace {

bool strictly_interlace(const std::vector<double>& outer, const std::vector<double>& inner) {
  // inner has one fewer element and each gap of outer holds exactly one inner point
  if (inner.size() + 1 != outer.size()) return false;
  for (std::size_t k = 0; k < inner.size(); ++k)
    if (!(outer[k] < inner[k] && inner[k] < outer[k + 1])) return false;
  return true;
}

std::vector<double> real_roots(const Polynomial& p, double* max_imag) {
  std::vector<double> r;
  if (p.degree() < 1) return r;
  for (Complex z : poly_roots(p)) {
    *max_imag = std::max(*max_imag, std::abs(z.imag()));
    r.push_back(z.real());
  }
  std::sort(r.begin(), r.end());
  return r;
}

}  // namespace

PencilSection build_section(const SchurChain& chain, int lo, int hi) {
  const auto c = chain.coefficients();
  if (lo < 0 || hi < lo) throw Error(Errc::InvalidArgument, "section needs 0 <= lo <= hi");
  if (hi >= static_cast<int>(c.size())) throw Error(Errc::ChainTooShort, "section beyond the chain");
  PencilSection s;
  s.lo = lo;
  s.hi = hi;
  for (int j = lo; j <= hi; ++j) {
    s.J1.diag.push_back(c[j].a1);
    s.J2.diag.push_back(c[j].a2);
    if (j < hi) {
      s.J1.sub.push_back(c[j].z * c[j].b);
      s.J1.sup.push_back(std::conj(c[j].z) * c[j].b);
      s.J2.sub.push_back(c[j].b);
      s.J2.sup.push_back(c[j].b);
    }
  }
  s.trailing_b = c[hi].b;
  return s;
}

Complex m_function(const PencilSection& s, Complex l) {
  TridiagonalMatrix a = s.J1;
  for (int k = 0; k < a.size(); ++k) a.diag[k] -= l * s.J2.diag[k];
  for (int k = 0; k + 1 < a.size(); ++k) {
    a.sub[k] -= l * s.J2.sub[k];
    a.sup[k] -= l * s.J2.sup[k];
  }
  CVector e = CVector::Zero(a.size());
  e(0) = 1.0;
  return tridiag_solve(a, e)(0);
}

CheckReport check_mfunction_identity(const SchurChain& chain, int n, const std::vector<Complex>& grid, double tol) {
  const PencilSection s = build_section(chain, 0, n);
  double worst = 0.0;
  for (Complex l : grid) {
    const Complex r = convergent_ratio(chain, n, l);
    worst = std::max(worst, std::abs(m_function(s, l) - r) / (1.0 + std::abs(r)));
  }
  return make_report("mfunction_identity", worst, tol, "n=" + std::to_string(n));
}

CheckReport riccati_check(const SchurChain& chain, int j, int n, const std::vector<Complex>& grid, double tol) {
  if (!(0 <= j && j < n)) throw Error(Errc::InvalidArgument, "Riccati check needs 0 <= j < n");
  const PencilSection outer = build_section(chain, j, n), inner = build_section(chain, j + 1, n);
  const auto c = chain.coefficients();
  double worst = 0.0;
  for (Complex l : grid) {
    const Complex lhs = m_function(outer, l);
    const Complex rhs = -1.0 / (c[j].a2 * l - c[j].a1 +
                                c[j].b * c[j].b * (l - c[j].z) * (l - std::conj(c[j].z)) * m_function(inner, l));
    worst = std::max(worst, std::abs(lhs - rhs) / (std::abs(lhs) + 1e-300));
  }
  return make_report("riccati", worst, tol, "j=" + std::to_string(j) + " n=" + std::to_string(n));
}

std::vector<double> gevp_spectrum(const PencilSection& s) {
  const DenseMatrix j2 = s.J2.dense();
  Eigen::LLT<DenseMatrix> llt(j2);
  if (llt.info() != Eigen::Success) throw Error(Errc::NotPositiveDefinite, "J2 Cholesky failed");
  const auto& lf = llt.matrixL();
  DenseMatrix x = lf.solve(s.J1.dense());
  DenseMatrix c = lf.solve(x.adjoint()).adjoint();
  c = 0.5 * (c + c.adjoint()).eval();
  return sym_eigs(c);
}

double j2_min_eigenvalue(const PencilSection& s) { return sym_eigs(s.J2.dense()).front(); }

J2Factorization j2_factorize(const PencilSection& s) {
  const int n = s.J2.size();
  J2Factorization f{DenseMatrix::Identity(n, n), DenseMatrix::Identity(n, n), 0.0};
  for (int k = 0; k < n; ++k) {
    const double b = k + 1 < n ? s.J2.sup[k].real() : s.trailing_b;
    if (std::abs(s.J2.diag[k].real() - (1.0 + b * b)) > 1e-9 * (1.0 + b * b))
      throw Error(Errc::InvariantViolated, "diag(J2) differs from 1 + b^2 at row " + std::to_string(k));
    if (k + 1 < n) {
      f.U(k, k + 1) = b;
      f.L(k + 1, k) = b;
    }
  }
  const DenseMatrix d = s.J2.dense() - f.U * f.L;
  f.discrepancy = d(n - 1, n - 1).real();
  return f;
}

double j2_sum_of_squares_residual(const PencilSection& s, const CVector& x) {
  const int n = s.J2.size();
  const Complex form = x.dot(s.J2.apply(x));
  double sos = std::norm(x(0));
  for (int k = 0; k + 1 < n; ++k) sos += std::norm(s.J2.sup[k].real() * x(k) + x(k + 1));
  sos += std::norm(s.trailing_b * x(n - 1));
  return std::abs(form - sos) / sos;
}

ResolventBounds resolvent_bound_check(const SchurChain& chain, int n, const std::vector<Complex>& grid,
                                      const Interval& iv, double slack) {
  ResolventBounds r;
  r.max_excess = -1e300;
  for (int k = 0; k <= n; ++k) {
    const PencilSection s = build_section(chain, 0, k);
    CVector e = CVector::Zero(k + 1);
    e(0) = 1.0;
    r.max_inverse_diag = std::max(r.max_inverse_diag, tridiag_solve(s.J2, e)(0).real());
    for (Complex l : grid) {
      const double d = iv.dist(l);
      const double a = std::abs(convergent_cf(chain, k, l));
      r.max_bound_ratio = std::max(r.max_bound_ratio, a * d);
      r.max_excess = std::max(r.max_excess, a - 1.0 / d);
    }
  }
  r.pass = r.max_inverse_diag <= 1.0 + slack && r.max_excess <= slack;
  return r;
}

ZeroReport zero_check(const SchurChain& chain, int n, const Interval& iv) {
  const PolyPair pp = build_polys(chain, n);
  ZeroReport z;
  z.p_zeros = real_roots(pp.P[n + 1], &z.max_imag);
  z.q_zeros = real_roots(pp.Q[n + 1], &z.max_imag);
  std::vector<double> prev = real_roots(pp.P[n], &z.max_imag);
  z.spectrum = gevp_spectrum(build_section(chain, 0, n));
  for (double x : z.p_zeros) z.max_outside = std::max({z.max_outside, iv.alpha - x, x - iv.beta});
  for (std::size_t k = 0; k < z.spectrum.size() && k < z.p_zeros.size(); ++k)
    z.spectrum_mismatch = std::max(z.spectrum_mismatch, std::abs(z.spectrum[k] - z.p_zeros[k]));
  if (z.spectrum.size() != z.p_zeros.size()) z.spectrum_mismatch = INFINITY;
  z.in_interval = z.max_outside <= 1e-8;
  z.interlace_q = strictly_interlace(z.p_zeros, z.q_zeros);
  z.interlace_prev = strictly_interlace(z.p_zeros, prev);
  return z;
}

}  // namespace mpade
