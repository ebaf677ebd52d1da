#include "mpade/numerics.hpp"

#include <algorithm>
#include <cmath>

#include "mpade/error.hpp"

namespace mpade {

Polynomial::Polynomial(std::vector<Complex> coeffs) : c_(std::move(coeffs)) { trim(); }

Polynomial Polynomial::constant(Complex c) { return Polynomial({c}); }

Polynomial Polynomial::linear(Complex root) { return Polynomial({-root, 1.0}); }

Polynomial Polynomial::from_roots(const std::vector<Complex>& roots) {
  Polynomial p = constant(1.0);
  for (Complex r : roots) p = p * linear(r);
  return p;
}

void Polynomial::trim() {
  while (!c_.empty() && c_.back() == Complex{}) c_.pop_back();
}

Complex Polynomial::coeff(int k) const {
  if (k < 0 || k > degree()) return {};
  return c_[k];
}

Complex Polynomial::operator()(Complex z) const {
  Complex acc{};
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  std::vector<Complex> r(std::max(c_.size(), o.c_.size()));
  for (std::size_t k = 0; k < c_.size(); ++k) r[k] += c_[k];
  for (std::size_t k = 0; k < o.c_.size(); ++k) r[k] += o.c_[k];
  return Polynomial(std::move(r));
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + o * Complex(-1.0); }

Polynomial Polynomial::operator*(const Polynomial& o) const {
  if (is_zero() || o.is_zero()) return {};
  std::vector<Complex> r(c_.size() + o.c_.size() - 1);
  for (std::size_t i = 0; i < c_.size(); ++i)
    for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  return Polynomial(std::move(r));
}

Polynomial Polynomial::operator*(Complex s) const {
  std::vector<Complex> r = c_;
  for (auto& x : r) x *= s;
  return Polynomial(std::move(r));
}

double Polynomial::max_abs_coeff() const {
  double m = 0;
  for (auto x : c_) m = std::max(m, std::abs(x));
  return m;
}

bool Polynomial::make_real(double tol) {
  const double scale = max_abs_coeff();
  bool ok = true;
  for (auto& x : c_) {
    if (std::abs(x.imag()) > tol * scale) ok = false;
    x = Complex(x.real(), 0.0);
  }
  trim();
  return ok;
}

Complex poly_eval(const Polynomial& p, Complex z) { return p(z); }

bool poles_consistent(const RationalFunction& f, double tol) {
  if (!f.poles) return true;
  const Polynomial monic = Polynomial::from_roots(*f.poles);
  if (monic.degree() != f.den.degree()) return false;
  const Complex probes[3] = {{0.37, 1.91}, {-2.13, 0.58}, {1.44, -3.07}};
  const Complex scale = f.den(probes[0]) / monic(probes[0]);
  for (Complex z : probes) {
    const Complex d = f.den(z);
    if (std::abs(d - scale * monic(z)) > tol * std::abs(d)) return false;
  }
  return true;
}

bool TridiagonalMatrix::consistent() const {
  const std::size_t n = diag.size();
  const std::size_t off = n == 0 ? 0 : n - 1;
  return sub.size() == off && sup.size() == off;
}

DenseMatrix TridiagonalMatrix::dense() const {
  const int n = size();
  DenseMatrix a = DenseMatrix::Zero(n, n);
  for (int k = 0; k < n; ++k) a(k, k) = diag[k];
  for (int k = 0; k + 1 < n; ++k) {
    a(k + 1, k) = sub[k];
    a(k, k + 1) = sup[k];
  }
  return a;
}

CVector TridiagonalMatrix::apply(const CVector& x) const {
  const int n = size();
  CVector y(n);
  for (int k = 0; k < n; ++k) {
    Complex s = diag[k] * x(k);
    if (k > 0) s += sub[k - 1] * x(k - 1);
    if (k + 1 < n) s += sup[k] * x(k + 1);
    y(k) = s;
  }
  return y;
}

CVector tridiag_solve(const TridiagonalMatrix& a, const CVector& rhs) {
  if (!a.consistent() || rhs.size() != a.size())
    throw Error(Errc::InvalidArgument, "tridiagonal shape mismatch");
  const int n = a.size();
  if (n == 0) return CVector(0);
  double scale = 0;
  for (auto v : a.diag) scale = std::max(scale, std::abs(v));
  for (auto v : a.sub) scale = std::max(scale, std::abs(v));
  for (auto v : a.sup) scale = std::max(scale, std::abs(v));
  if (scale == 0) throw Error(Errc::SingularMatrix, "zero matrix");
  const double floor = kPivotFloor * scale;

  // Row k holds entries in columns k..k+2 after pivoting (one fill-in).
  std::vector<Complex> d(a.diag), u1(n, 0.0), u2(n, 0.0), l(n, 0.0);
  for (int k = 0; k + 1 < n; ++k) u1[k] = a.sup[k];
  CVector b = rhs;
  std::vector<Complex> s(a.sub);
  for (int k = 0; k < n; ++k) {
    if (k + 1 < n && std::abs(s[k]) > std::abs(d[k])) {
      // swap row k with row k+1
      std::swap(d[k], s[k]);
      std::swap(u1[k], d[k + 1]);
      std::swap(u2[k], u1[k + 1]);
      std::swap(b(k), b(k + 1));
    }
    if (std::abs(d[k]) <= floor) throw Error(Errc::SingularMatrix, "pivot below floor");
    if (k + 1 < n) {
      const Complex m = s[k] / d[k];
      d[k + 1] -= m * u1[k];
      u1[k + 1] -= m * u2[k];
      b(k + 1) -= m * b(k);
    }
  }
  CVector x(n);
  for (int k = n - 1; k >= 0; --k) {
    Complex v = b(k);
    if (k + 1 < n) v -= u1[k] * x(k + 1);
    if (k + 2 < n) v -= u2[k] * x(k + 2);
    x(k) = v / d[k];
  }
  return x;
}

Complex dense_det(const DenseMatrix& a) {
  if (a.rows() != a.cols()) throw Error(Errc::InvalidArgument, "determinant of non-square matrix");
  if (a.rows() == 0) return 1.0;
  return Eigen::PartialPivLU<DenseMatrix>(a).determinant();
}

std::vector<double> sym_eigs(const DenseMatrix& a, DenseMatrix* vectors) {
  if (a.rows() != a.cols()) throw Error(Errc::InvalidArgument, "eigenvalues of non-square matrix");
  const double scale = std::max(a.cwiseAbs().maxCoeff(), 1e-300);
  if ((a - a.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw Error(Errc::NotHermitian, "asymmetry above tolerance");
  const DenseMatrix h = 0.5 * (a + a.adjoint());
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es(h, vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw Error(Errc::NumericFailure, "eigensolver did not converge");
  if (vectors) *vectors = es.eigenvectors();
  const auto& ev = es.eigenvalues();
  return std::vector<double>(ev.data(), ev.data() + ev.size());
}

std::vector<double> sym_eigs(const DenseMatrix& a) { return sym_eigs(a, nullptr); }

std::vector<Complex> poly_roots(const Polynomial& p) {
  const int n = p.degree();
  if (n < 1) throw Error(Errc::InvalidArgument, "root finding needs degree >= 1");
  DenseMatrix c = DenseMatrix::Zero(n, n);
  for (int k = 1; k < n; ++k) c(k, k - 1) = 1.0;
  for (int k = 0; k < n; ++k) c(k, n - 1) = -p.coeff(k) / p.lead();
  Eigen::ComplexEigenSolver<DenseMatrix> es(c, false);
  if (es.info() != Eigen::Success) throw Error(Errc::NumericFailure, "companion eigensolver failed");
  std::vector<Complex> r(es.eigenvalues().data(), es.eigenvalues().data() + n);
  std::sort(r.begin(), r.end(), [](Complex x, Complex y) {
    return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
  });
  return r;
}

}  // namespace mpade
