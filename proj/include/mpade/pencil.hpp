#pragma once

#include <vector>

#include "mpade/recurrence.hpp"
#include "mpade/report.hpp"
#include "mpade/schur.hpp"

namespace mpade {

/// Finite section [lo, hi] of the pencil J1 - lambda J2. Local indexing: row 0
/// of the matrices is global index lo.
struct PencilSection {
  int lo = 0;
  int hi = 0;
  TridiagonalMatrix J1;  // diag a1, sub z_j b_j, sup conj(z_j) b_j
  TridiagonalMatrix J2;  // diag a2, off b_j
  double trailing_b = 0.0;  // b_hi, outside the section
};

PencilSection build_section(const SchurChain& chain, int lo, int hi);

/// <(J1 - lambda J2)^{-1} e_first, e_first>
Complex m_function(const PencilSection& s, Complex lambda);

CheckReport check_mfunction_identity(const SchurChain& chain, int n, const std::vector<Complex>& grid,
                                     double tol = 1e-9);
CheckReport riccati_check(const SchurChain& chain, int j, int n, const std::vector<Complex>& grid, double tol = 1e-9);

/// Generalized eigenvalues, ascending, through J2 = L L^T and L^{-1} J1 L^{-T}.
std::vector<double> gevp_spectrum(const PencilSection& s);
double j2_min_eigenvalue(const PencilSection& s);

struct J2Factorization {
  DenseMatrix U;  // unit upper bidiagonal, superdiagonal b_j
  DenseMatrix L;  // unit lower bidiagonal, subdiagonal b_j
  /// J2 - U L; nonzero only in the last diagonal entry, where it equals b_hi^2.
  double discrepancy = 0.0;
};

J2Factorization j2_factorize(const PencilSection& s);

/// (J2 x, x) = |x_0|^2 + sum |b_j x_j + x_{j+1}|^2 + |b_hi x_hi|^2 on a given vector.
double j2_sum_of_squares_residual(const PencilSection& s, const CVector& x);

/// Inverse-diagonal bound <J2^{-1} e0, e0> <= 1 for all sections [0,k], k <= n, and
/// |R_k(lambda)| <= 1/dist(lambda, [alpha, beta]) on the grid.
struct ResolventBounds {
  double max_inverse_diag = 0.0;
  double max_bound_ratio = 0.0;  // max |R_k| dist
  double max_excess = 0.0;       // max |R_k| - 1/dist
  bool pass = false;
};

ResolventBounds resolvent_bound_check(const SchurChain& chain, int n, const std::vector<Complex>& grid,
                                      const Interval& iv, double slack = 1e-10);

/// Zeros of P_{n+1} in the interval, strict interlacing with Q_{n+1} and with P_n,
/// and agreement of the zeros with the pencil spectrum.
struct ZeroReport {
  std::vector<double> p_zeros, q_zeros, spectrum;
  double max_outside = 0.0;     // distance of the worst zero outside [alpha, beta]
  double max_imag = 0.0;        // largest imaginary part among computed zeros
  double spectrum_mismatch = 0.0;
  bool in_interval = false;
  bool interlace_q = false;
  bool interlace_prev = false;
};

ZeroReport zero_check(const SchurChain& chain, int n, const Interval& iv);

}  // namespace mpade
