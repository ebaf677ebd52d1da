#include "mpade/schur.hpp"

#include <cmath>

#include "mpade/error.hpp"

namespace mpade {

namespace {

// Relative size of the new direction below which the rational space stopped
// growing (finite support exhausted).
constexpr double kExhausted = 1e-10;
constexpr double kStepConsistency = 1e-8;

Eigen::ArrayXd support_array(const Measure& m) {
  return Eigen::Map<const Eigen::ArrayXd>(m.nodes().data(), static_cast<Eigen::Index>(m.size()));
}

}  // namespace

std::vector<SchurStep> SchurChain::coefficients() const {
  std::vector<SchurStep> all = steps;
  if (terminal) all.push_back(*terminal);
  return all;
}

SchurChain chain_from_coefficients(std::vector<SchurStep> steps, std::optional<SchurStep> terminal) {
  SchurChain c;
  c.steps = std::move(steps);
  c.terminal = terminal;
  c.terminated = terminal.has_value();
  for (const auto& s : c.steps) c.nodes.z.push_back(s.z);
  if (terminal) c.nodes.z.push_back(terminal->z);
  return c;
}

SchurChain start_chain(const Measure& m, const NodeSequence& nodes, double eps_degenerate) {
  nodes.validate();
  SchurChain c;
  c.measure = normalize(m);
  c.nodes = nodes;
  c.eps_degenerate = eps_degenerate;
  const auto& w = c.measure.masses();
  c.basis.resize(static_cast<Eigen::Index>(w.size()), 1);
  for (std::size_t i = 0; i < w.size(); ++i) c.basis(static_cast<Eigen::Index>(i), 0) = std::sqrt(w[i]);
  c.basis_inf = {1.0};
  return c;
}

SchurStep step_from_value(Complex z, Complex w, double eps_degenerate, SchurStep* terminal_out) {
  if (!(z.imag() > 0)) throw Error(Errc::InvalidArgument, "node must lie in the upper half plane");
  if (w == Complex{}) throw Error(Errc::ZeroDenominator, "phi(z) = 0");
  const Complex inv = 1.0 / w;
  const double a2 = -inv.imag() / z.imag();
  const Complex a1c = a2 * z + inv;
  if (std::abs(a1c.imag()) > 1e-10 * (1.0 + std::abs(a1c)))
    throw Error(Errc::NumericFailure, "imaginary residue in a1");
  SchurStep s{z, a1c.real(), a2, 0.0, w};
  const double b2 = a2 - 1.0;
  if (b2 < -1e-9) throw Error(Errc::NonpositiveB, "a2 < 1: data is not a normalized Markov value");
  if (b2 <= eps_degenerate) {
    if (terminal_out) *terminal_out = s;
    throw Error(Errc::DegenerateStep, "b^2 below the degeneracy threshold");
  }
  s.b = std::sqrt(b2);
  return s;
}

Complex phi_chain_eval(const SchurChain& chain, int j, Complex lambda) {
  if (!chain.has_basis()) throw Error(Errc::InvalidArgument, "chain has no measure basis");
  if (j < 0 || j >= chain.basis.cols()) throw Error(Errc::ChainTooShort, "tail index beyond the chain");
  if (chain.measure.interval().dist(lambda) <= kSupportTol)
    throw Error(Errc::PointOnSupport, "evaluation point on the interval");
  for (int k = 0; k < j; ++k) {
    const Complex z = chain.nodes[k];
    const double tol = 1e-14 * (1.0 + std::abs(z));
    if (std::abs(lambda - z) <= tol || std::abs(lambda - std::conj(z)) <= tol)
      throw Error(Errc::NodeCollision, "evaluation point equals a consumed node");
  }
  // phi_j is the m-function of multiplication by t compressed to the orthogonal
  // complement of span{g_0..g_{j-1}}, taken at g_j.
  const Eigen::ArrayXcd d = 1.0 / (support_array(chain.measure).cast<Complex>() - lambda);
  const CVector g = chain.basis.col(j);
  const CVector dg = (d * g.array()).matrix();
  Complex val = g.dot(dg);
  if (j > 0) {
    const auto q = chain.basis.leftCols(j);
    const DenseMatrix m = q.adjoint() * (d.matrix().asDiagonal() * q);
    const CVector r = q.adjoint() * dg;
    const CVector y = Eigen::PartialPivLU<DenseMatrix>(m).solve(r);
    val -= g.dot((d * (q * y).array()).matrix());
  }
  return val;
}

const SchurStep& schur_step(SchurChain& chain) {
  if (chain.terminated) throw Error(Errc::DegenerateStep, "chain already terminated");
  if (!chain.has_basis()) throw Error(Errc::InvalidArgument, "chain has no measure basis");
  const int j = static_cast<int>(chain.steps.size());
  if (static_cast<std::size_t>(j) >= chain.nodes.size()) throw Error(Errc::ChainTooShort, "no node left");
  const Complex z = chain.nodes[j];
  const Eigen::ArrayXd t = support_array(chain.measure);

  // next rational Krylov direction, vanishing at infinity
  CVector v = (chain.basis.col(j).array() / (t.cast<Complex>() - z)).matrix();
  const double v0 = v.norm();
  Complex vinf{};
  const Eigen::Map<const CVector> inf(chain.basis_inf.data(), j + 1);
  for (int pass = 0; pass < 2; ++pass) {
    const CVector h = chain.basis.adjoint() * v;
    v -= chain.basis * h;
    vinf -= (inf.array() * h.array()).sum();
  }
  const double hn = v.norm();
  const CVector gj = chain.basis.col(j);
  const Eigen::ArrayXcd tc = t.cast<Complex>();
  const Complex w = phi_chain_eval(chain, j, z);

  auto finish_terminal = [&](double a1) {
    chain.terminal = SchurStep{z, a1, 1.0, 0.0, w};
    chain.terminated = true;
    throw Error(Errc::DegenerateStep, "measure support exhausted at step " + std::to_string(j));
  };
  if (hn <= kExhausted * v0) finish_terminal(gj.dot((tc * gj.array()).matrix()).real());

  Complex ginf = vinf / hn;
  const Complex ratio = chain.basis_inf[j] / ginf;
  if (std::abs(ratio) == 0.0 || !std::isfinite(std::abs(ratio))) throw Error(Errc::NumericFailure, "value at infinity lost");
  const Complex theta = -ratio / std::abs(ratio);
  CVector g = v * (theta / hn);
  ginf *= theta;
  const double b = std::abs(ratio);
  if (b * b <= chain.eps_degenerate) finish_terminal(gj.dot((tc * gj.array()).matrix()).real());

  const CVector f = gj + b * g;
  const double a1 = f.dot((tc * f.array()).matrix()).real();
  const double a2 = 1.0 + b * b;

  // cross-check against the value form of the step
  const Complex inv = 1.0 / w;
  const double a2w = -inv.imag() / z.imag();
  const Complex a1w = a2w * z + inv;
  if (std::abs(a2w - a2) > kStepConsistency * a2 ||
      std::abs(a1w.real() - a1) > kStepConsistency * (1.0 + std::abs(a1) + a2 * std::abs(z)))
    throw Error(Errc::NumericFailure, "step coefficients disagree with the tail value at step " + std::to_string(j));
  if (a2w - 1.0 < -1e-9) throw Error(Errc::NonpositiveB, "a2 < 1 from tail value");

  chain.basis.conservativeResize(Eigen::NoChange, j + 2);
  chain.basis.col(j + 1) = g;
  chain.basis_inf.push_back(ginf);
  // keep the values at infinity in range; only their ratios matter
  const double big = std::abs(ginf);
  if (big > 1e100)
    for (auto& x : chain.basis_inf) x /= big;
  chain.steps.push_back(SchurStep{z, a1, a2, b, w});
  return chain.steps.back();
}

SchurChain run_chain(const Measure& m, const NodeSequence& nodes, int n_steps, double eps_degenerate) {
  if (n_steps < 0 || static_cast<std::size_t>(n_steps) > nodes.size())
    throw Error(Errc::ChainTooShort, "fewer nodes than requested steps");
  SchurChain c = start_chain(m, nodes, eps_degenerate);
  try {
    for (int k = 0; k < n_steps; ++k) schur_step(c);
  } catch (const Error& e) {
    if (e.code() != Errc::DegenerateStep) throw;
  }
  return c;
}

PickForms pick_forms(const std::vector<Complex>& z, const std::vector<Complex>& w, const Interval& iv, int n) {
  if (n < 0 || static_cast<std::size_t>(n) >= z.size() || z.size() != w.size())
    throw Error(Errc::InvalidArgument, "Pick forms need n+1 <= data length");
  PickForms pf{DenseMatrix(n + 1, n + 1), DenseMatrix(n + 1, n + 1)};
  for (int j = 0; j <= n; ++j) {
    if (!(z[j].imag() > 0)) throw Error(Errc::InvalidArgument, "Pick nodes must lie in the upper half plane");
    for (int k = 0; k <= n; ++k) {
      const Complex den = z[j] - std::conj(z[k]);
      const Complex wk = std::conj(w[k]), zk = std::conj(z[k]);
      pf.K_alpha(j, k) = (w[j] * (z[j] - iv.alpha) - wk * (zk - iv.alpha)) / den;
      pf.K_beta(j, k) = (w[j] * (iv.beta - z[j]) - wk * (iv.beta - zk)) / den;
    }
  }
  return pf;
}

bool check_solvability(const PickForms& pf, double tol) {
  return sym_eigs(pf.K_alpha).front() >= -tol && sym_eigs(pf.K_beta).front() >= -tol;
}

Mat2 transfer_matrix(const SchurStep& s, Complex lambda) {
  const Complex zc = std::conj(s.z);
  if (std::abs(lambda - zc) <= 1e-14 * (1.0 + std::abs(zc))) throw Error(Errc::PoleHit, "lambda equals conj(z)");
  if (!(s.b > 0)) throw Error(Errc::InvalidArgument, "transfer matrix needs b > 0");
  const Complex d = s.b * (lambda - zc);
  return {{{Complex{}, -1.0 / d}, {s.b * (lambda - s.z), (s.a2 * lambda - s.a1) / d}}};
}

Complex recover_from_tail(const SchurChain& chain, int n, const std::function<Complex(Complex)>& tau,
                          Complex lambda) {
  if (n < 0 || static_cast<std::size_t>(n) >= chain.steps.size())
    throw Error(Errc::ChainTooShort, "transfer product beyond the nondegenerate steps");
  Mat2 w{{{1.0, 0.0}, {0.0, 1.0}}};
  for (int k = 0; k <= n; ++k) {
    const Mat2 f = transfer_matrix(chain.steps[k], lambda);
    Mat2 r{};
    for (int i = 0; i < 2; ++i)
      for (int l = 0; l < 2; ++l) r[i][l] = w[i][0] * f[0][l] + w[i][1] * f[1][l];
    w = r;
  }
  const Complex t = tau(lambda);
  const Complex den = w[1][0] * t + w[1][1];
  if (den == Complex{}) throw Error(Errc::ZeroDenominator, "transfer denominator vanishes");
  return (w[0][0] * t + w[0][1]) / den;
}

}  // namespace mpade
