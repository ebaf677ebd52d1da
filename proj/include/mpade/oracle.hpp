#pragma once

#include <vector>

#include "mpade/report.hpp"
#include "mpade/schur.hpp"

namespace mpade {

/// Interpolation of phi at z_0..z_n and their conjugates by Q/P with
/// deg Q <= num_degree, deg P <= den_degree and real coefficients.
struct InterpolationProblem {
  std::vector<Complex> nodes;
  std::vector<Complex> values;
  int num_degree = 0;
  int den_degree = 1;
  double mass = 1.0;
  Interval interval;  // sets the polynomial basis scaling
};

InterpolationProblem make_problem(const Measure& m, const NodeSequence& nodes, int n);

struct PadeSolution {
  RationalFunction r;  // lead(den) = 1
  double rank_gap = 0.0;  // smallest retained singular value over the largest
};

PadeSolution newton_pade_detail(const InterpolationProblem& prob);
RationalFunction newton_pade_solve(const InterpolationProblem& prob);

/// Complex interpolant Q_m / P_n through m + n + 1 points; P monic when it has full degree.
PadeSolution pade_interpolate(const std::vector<Complex>& nodes, const std::vector<Complex>& values, int m, int n);

/// max over grid of |oracle(lambda) - R_n(lambda)|
double oracle_chain_difference(const SchurChain& chain, int n, const std::vector<Complex>& grid);

/// Node order s_0, s_1, ... = z_0, conj z_0, z_1, conj z_1, ...
std::vector<Complex> conjugate_pair_order(const NodeSequence& nodes, int count);

/// [s_0 .. s_{2n-1}]{z^j F P} for j < n, each normalized by sum |v_i| / prod |s_i - s_k|.
CheckReport check_ort_PI(const Polynomial& P, const std::vector<Complex>& nodes, const std::vector<Complex>& F, int n,
                         double tol = 1e-8);

struct BiortPIReport {
  DenseMatrix G_dd;   // divided-difference functional
  DenseMatrix G_int;  // integration against the measure
  double max_offdiag = 0.0;   // relative to the largest diagonal entry
  double route_diff = 0.0;    // max |G_dd - G_int| relative to the largest diagonal entry
  bool pass = false;
};

/// U_n = P_n / ((z - s_1)(z - s_3)...(z - s_{2n-1})) from the diagonal interpolant on s_0..s_{2n-1},
/// V_m = P~_m / ((z - s_2)...(z - s_{2m})) from the interpolant on s_0..s_{2m-2}, s_{2m};
/// G(n, m) = [s_0 .. s_{2n-1}]{U_n V_m / (z - s_0)}, read as the divided difference of F P_n P~_m over
/// the pole set of U_n V_m / (z - s_0).
BiortPIReport check_biort_PI(const Measure& m, const NodeSequence& nodes, int N, double tol = 1e-6);

}  // namespace mpade
