#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "mpade/report.hpp"
#include "mpade/schur.hpp"

namespace mpade {

/// Coefficients of P_{n+1} + (alpha_n z + beta_n) P_n + r_n (z - a_n)(z - b_n) P_{n-1} = 0.
/// alpha, beta, r are indexed 0..N; a, b are indexed 0..N+1, where a[0], b[0]
/// and r[0] are the free n = 0 parameters of the first-order system.
struct R2Data {
  std::vector<Complex> alpha, beta, r;
  std::vector<Complex> a, b;
  Complex kappa0 = 1.0;
  Complex kappa1 = 0.0;
  int N = 0;

  /// Sizes, alpha_0 = -1, alpha_n + r_n + 1 = 0, r_n != 0, a_n != b_n.
  void validate(double tol = 1e-10) const;
};

/// Monic renormalization of the chain recurrence with a_k = z_{k-1},
/// b_k = conj z_{k-1}, a_0 = alpha - 1, b_0 = beta + 1, r_0 = 1. kappa0 and
/// kappa1 are computed from the chain measure unless supplied.
R2Data from_chain(const SchurChain& chain, int N, std::optional<std::pair<Complex, Complex>> kappa = std::nullopt);

/// int p_n t^n / (A_n B_n) dsigma with p_n the monic polynomial of the chain.
Complex kappa_by_quadrature(const SchurChain& chain, int n);

std::vector<Complex> kappa_sequence(const std::vector<Complex>& alpha, const std::vector<Complex>& r, Complex kappa0,
                                    Complex kappa1, int count);

struct BiorthSystem {
  R2Data data;
  std::vector<Polynomial> P;        // 0..N+1, monic
  std::vector<Complex> kappa;       // 0..N+1
  std::vector<Complex> xi;          // 0..N+1, xi[0] = 0
  std::vector<Complex> h;           // 0..N
  std::vector<RationalFunction> U;  // 0..N
  std::vector<RationalFunction> V;  // 0..N
  std::vector<Polynomial> S;        // 0..N+1, monic
  std::vector<Polynomial> T;        // 0..N+1, monic
};

BiorthSystem build_system(const R2Data& data);

/// c(k, l) = sigma{1 / (A_k B_l)} by integration, k, l <= n.
DenseMatrix moment_table(const R2Data& data, const Measure& m, int n);

/// gamma_0..gamma_n with U_n = sum gamma_k / A_k (V_n over B_k), from the
/// current P and xi of the system.
std::vector<Complex> u_basis_coeffs(const BiorthSystem& sys, int n);
std::vector<Complex> v_basis_coeffs(const BiorthSystem& sys, int n);
Complex eval_basis(const std::vector<Complex>& coeffs, const std::vector<Complex>& poles, Complex z);

/// sigma{U_n V_m} for n, m <= N through the moment table.
DenseMatrix gram_from_moments(const BiorthSystem& sys, const DenseMatrix& c, int N);
/// int U_n V_m dsigma for n, m <= N by quadrature of the sampled functions.
DenseMatrix gram_by_quadrature(const BiorthSystem& sys, const Measure& m, int N);

struct GramReport {
  DenseMatrix G;
  double max_offdiag = 0.0;  // relative to max |h|
  double max_diag_rel = 0.0;
  bool pass = false;
};

GramReport check_biorthogonality(const BiorthSystem& sys, const DenseMatrix& G, double off_tol = 1e-7,
                                 double diag_tol = 1e-6);

struct DeterminantForm {
  std::vector<Complex> u_coeffs;  // over 1, 1/A_1, ..., 1/A_n
  std::vector<Complex> v_coeffs;  // over 1, 1/B_1, ..., 1/B_n
  Complex delta = 1.0;            // Delta_n
};

Complex delta_n(const DenseMatrix& c, int n);
DeterminantForm determinant_forms(const BiorthSystem& sys, const DenseMatrix& c, int n);

/// Largest relative difference between the determinant and recurrence forms of
/// U_n and V_n at the given points.
double determinant_route_error(const BiorthSystem& sys, const DenseMatrix& c, int n, const std::vector<Complex>& points);

/// |P_n(a_n) P_n(b_n) - (Delta_n / Delta_{n+1}) kappa_n (1 - xi_n)| relative to the right side.
double pp_kap_residual(const BiorthSystem& sys, const DenseMatrix& c, int n);

struct NuCoefficients {
  Complex nu1, nu2, nu3, nu4;
};

NuCoefficients nu_coefficients(const BiorthSystem& sys, int n);
std::pair<Polynomial, Polynomial> first_order_step(const BiorthSystem& sys, int n);
/// Coefficient-wise distance of the first-order step to the stored S_{n+1}, T_{n+1}.
double first_order_residual(const BiorthSystem& sys, int n);
/// P_n recovered from S_n, S_{n+1} (and from T_n, T_{n+1}); relative coefficient error.
double p_recovery_residual(const BiorthSystem& sys, int n);

struct KappaDegeneration {
  double spread = 0.0;  // max |kappa_n - kappa_0| / |kappa_0|
  bool constant = false;
  bool refused = false;  // build_system threw KappaDegenerate
};

KappaDegeneration kappa_degeneration_check(const R2Data& data);

/// Relative residual of the three-term relation for R^(1)_n = P_n / A_n
/// (which = 1) or R^(2)_n = P_n / B_n (which = 2) at lambda.
double r_recurrence_residual(const BiorthSystem& sys, int n, Complex lambda, int which = 1);

}  // namespace mpade
