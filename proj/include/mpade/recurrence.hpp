#pragma once

#include <vector>

#include "mpade/report.hpp"
#include "mpade/schur.hpp"

namespace mpade {

struct PolyPair {
  std::vector<Polynomial> P;  // P_0..P_{n+1}
  std::vector<Polynomial> Q;  // Q_0..Q_{n+1}
};

PolyPair build_polys(const SchurChain& chain, int n);

/// Values P_0..P_{n+1} and Q_0..Q_{n+1} at one point, by the recurrence.
void recurrence_values(const SchurChain& chain, int n, Complex lambda, std::vector<Complex>* p,
                       std::vector<Complex>* q);

/// R_n by the backward continued fraction with zero tail.
Complex convergent_cf(const SchurChain& chain, int n, Complex lambda);
/// Q_{n+1}/P_{n+1} from the pointwise recurrence.
Complex convergent_ratio(const SchurChain& chain, int n, Complex lambda);
/// Q_{n+1}/P_{n+1}, verified against the continued fraction to 1e-9 (1 + |R_n|).
Complex eval_convergent(const SchurChain& chain, int n, Complex lambda);

/// u_j / (b_0...b_{j-1} (z_0 - lambda)...(z_{j-1} - lambda)).
Complex hat_normalize(const SchurChain& chain, Complex u, int j, Complex lambda);

/// Residual of b_j(z_j - l) u_{j+1} - (a2_j l - a1_j) u_j + b_{j-1}(conj z_{j-1} - l) u_{j-1}
/// for the normalized first-kind values, relative to the term sizes.
double hat_recurrence_residual(const SchurChain& chain, int j, Complex lambda);

/// Both orthogonality forms for P_{n+1}; value is the larger normalized residual.
CheckReport check_np_orthogonality(const SchurChain& chain, const Measure& m, int n, double tol = 1e-8);

/// xi_0 = 0 and the moment ratios for j = 1..n.
std::vector<double> xi_sequence(const SchurChain& chain, const Measure& m, int n);

}  // namespace mpade
