#pragma once

#include <complex>
#include <optional>
#include <vector>

#include <Eigen/Dense>

namespace mpade {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using DenseMatrix = Eigen::MatrixXcd;

/// Dense polynomial with complex coefficients in ascending order.
/// The zero polynomial has an empty coefficient list and degree -1.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Complex> coeffs);
  static Polynomial constant(Complex c);
  /// z - root
  static Polynomial linear(Complex root);
  /// Monic product of (z - r) over the given roots.
  static Polynomial from_roots(const std::vector<Complex>& roots);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Complex>& coeffs() const { return c_; }
  Complex coeff(int k) const;
  Complex lead() const { return c_.empty() ? Complex{} : c_.back(); }

  Complex operator()(Complex z) const;

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator*(Complex s) const;

  /// Drops imaginary parts after checking they are at most tol relative to
  /// the largest coefficient; returns false if the check failed.
  bool make_real(double tol);
  double max_abs_coeff() const;

 private:
  void trim();
  std::vector<Complex> c_;
};

Complex poly_eval(const Polynomial& p, Complex z);

struct RationalFunction {
  Polynomial num;
  Polynomial den;
  std::optional<std::vector<Complex>> poles;

  Complex operator()(Complex z) const { return num(z) / den(z); }
};

/// Checks den against the monic pole product up to a constant factor, at three
/// pseudo-random probes.
bool poles_consistent(const RationalFunction& f, double tol = 1e-9);

struct TridiagonalMatrix {
  std::vector<Complex> diag;
  std::vector<Complex> sub;  // (k+1, k)
  std::vector<Complex> sup;  // (k, k+1)

  int size() const { return static_cast<int>(diag.size()); }
  bool consistent() const;
  DenseMatrix dense() const;
  CVector apply(const CVector& x) const;
};

inline constexpr double kPivotFloor = 1e-14;

/// Gaussian elimination with partial pivoting on the banded form.
/// Throws SingularMatrix when a pivot falls below kPivotFloor * scale.
CVector tridiag_solve(const TridiagonalMatrix& a, const CVector& rhs);

Complex dense_det(const DenseMatrix& a);

/// Ascending eigenvalues of a Hermitian matrix; NotHermitian if asymmetry
/// exceeds 1e-12 relative to the largest entry.
std::vector<double> sym_eigs(const DenseMatrix& a);
std::vector<double> sym_eigs(const DenseMatrix& a, DenseMatrix* vectors);

/// Companion-matrix eigenvalues.
std::vector<Complex> poly_roots(const Polynomial& p);

}  // namespace mpade
