#pragma once

#include <array>
#include <functional>
#include <optional>
#include <vector>

#include "mpade/measure.hpp"
#include "mpade/numerics.hpp"

namespace mpade {

struct SchurStep {
  Complex z;
  double a1 = 0.0;
  double a2 = 0.0;
  double b = 0.0;
  Complex phi_at_z;
};

/// Step-by-step reduction of a Markov function. Besides the coefficient
/// stream the chain keeps an orthonormal basis g_0..g_k of the rational spaces
/// span{1, 1/(t-z_0), ..., 1/(t-z_{k-1})} in L2(sigma), sampled on the
/// support of the (discretized) measure, together with each g's value at
/// infinity. Coefficients and tail functions are read off this basis.
struct SchurChain {
  Measure measure;  // normalized
  NodeSequence nodes;
  std::vector<SchurStep> steps;
  bool terminated = false;
  std::optional<SchurStep> terminal;  // final record (b = 0) when terminated
  double eps_degenerate = 1e-12;

  DenseMatrix basis;              // columns sqrt(w_i) g_k(t_i)
  std::vector<Complex> basis_inf; // g_k(infinity), common positive scaling allowed

  /// steps followed by the terminal record, if any.
  std::vector<SchurStep> coefficients() const;
  bool has_basis() const { return basis.cols() > 0; }
};

/// Chain with a prescribed coefficient stream and no measure behind it.
SchurChain chain_from_coefficients(std::vector<SchurStep> steps, std::optional<SchurStep> terminal = std::nullopt);

SchurChain start_chain(const Measure& m, const NodeSequence& nodes, double eps_degenerate = 1e-12);

/// Coefficients of one step from the value w = phi_j(z); b from a2 = 1 + b^2.
/// Throws NonpositiveB or DegenerateStep (with the record in *terminal_out).
SchurStep step_from_value(Complex z, Complex w, double eps_degenerate = 1e-12, SchurStep* terminal_out = nullptr);

Complex phi_chain_eval(const SchurChain& chain, int j, Complex lambda);
const SchurStep& schur_step(SchurChain& chain);
SchurChain run_chain(const Measure& m, const NodeSequence& nodes, int n_steps, double eps_degenerate = 1e-12);

struct PickForms {
  DenseMatrix K_alpha;
  DenseMatrix K_beta;
};

PickForms pick_forms(const std::vector<Complex>& z, const std::vector<Complex>& w, const Interval& iv, int n);
bool check_solvability(const PickForms& pf, double tol);

using Mat2 = std::array<std::array<Complex, 2>, 2>;

Mat2 transfer_matrix(const SchurStep& step, Complex lambda);
Complex recover_from_tail(const SchurChain& chain, int n, const std::function<Complex(Complex)>& tau,
                          Complex lambda);

}  // namespace mpade
