// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "fixtures.hpp"
#include "mpade/biorth.hpp"
#include "mpade/error.hpp"
#include "mpade/oracle.hpp"
#include "mpade/pencil.hpp"
#include "mpade/recurrence.hpp"

using namespace mpade;
using namespace mpade::fixtures;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", x);
  return buf;
}

Outcome ac1_exact_recovery() {
  const auto t0 = std::chrono::steady_clock::now();
  NodeSequence ns{{1i, 2i, 3i}, 0.5};
  const SchurChain c = run_chain(two_point(), ns, 3);
  bool ok = c.steps.size() == 1 && c.terminated && c.terminal.has_value();
  double err = 0.0;
  if (ok) {
    const SchurStep& s = c.steps[0];
    const SchurStep& t = *c.terminal;
    err = std::max({std::abs(s.a1), std::abs(s.a2 - 2.0), std::abs(s.b - 1.0), std::abs(t.a1), std::abs(t.a2 - 1.0),
                    std::abs(t.b)});
    // R_1 = -lambda / (lambda^2 - 1)
    const PolyPair pp = build_polys(c, 1);
    const Polynomial& P = pp.P[2];
    const Polynomial& Q = pp.Q[2];
    const Complex lead = P.lead();
    err = std::max({err, std::abs(P.coeff(0) / lead + 1.0), std::abs(P.coeff(1) / lead), std::abs(Q.coeff(0) / lead),
                    std::abs(Q.coeff(1) / lead + 1.0)});
    const auto eig = gevp_spectrum(build_section(c, 0, 1));
    const double eig_err = eig.size() == 2 ? std::max(std::abs(eig[0] + 1.0), std::abs(eig[1] - 1.0)) : 1.0;
    ok = err <= 1e-12 && eig_err <= 1e-10;
    err = std::max(err, eig_err);
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {ok && secs < 1.0, "max coefficient/eigenvalue error " + sci(err)};
}

Outcome ac2_interpolation() {
  const auto t0 = std::chrono::steady_clock::now();
  const int n = 10;
  const NodeSequence ns = vertical(n + 1);
  const SchurChain c = run_chain(chebyshev(), ns, n + 1);
  double worst = 0.0;
  for (int k = 0; k <= n; ++k) worst = std::max(worst, std::abs(eval_convergent(c, n, ns[k]) - chebyshev_phi(ns[k])));
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {worst <= 1e-8 && secs < 5.0, "max |R_10(z_k) - phi(z_k)| = " + sci(worst)};
}

Outcome ac3_operator_identity() {
  const SchurChain c = run_chain(chebyshev(), vertical(16), 16);
  std::vector<Complex> grid = circle(25, 1.5, 0.0, 0.5);
  const auto upper = random_upper(25, 33);
  for (std::size_t k = 0; k < upper.size(); ++k) grid.push_back(k % 2 == 0 ? upper[k] : std::conj(upper[k]));
  const PolyPair pp = build_polys(c, 15);
  double worst = 0.0;
  for (int n = 0; n <= 15; ++n) {
    const PencilSection s = build_section(c, 0, n);
    for (Complex l : grid) {
      const Complex r = pp.Q[n + 1](l) / pp.P[n + 1](l);
      worst = std::max(worst, std::abs(m_function(s, l) - r) / (1.0 + std::abs(r)));
    }
  }
  return {worst <= 1e-9, "max scaled |m - Q/P| over 50 points, n <= 15: " + sci(worst)};
}

Outcome ac4_oracle() {
  std::vector<double> t(16), w(16);
  for (int i = 0; i < 16; ++i) t[i] = -1.0 + 2.0 * i / 15.0, w[i] = 1.0 + i % 3;
  const std::vector<std::pair<std::string, Measure>> measures{
      {"chebyshev", chebyshev()},
      {"discrete12", scattered()},
      {"discrete16", normalize(Measure::discrete({-1.0, 1.0}, t, w))}};
  const NodeSequence ns = arc(11, 1.1);
  const std::vector<Complex> grid = circle(20, 1.6, 0.0, 0.3);
  double worst = 0.0;
  std::string where;
  for (const auto& [name, m] : measures) {
    const SchurChain c = run_chain(m, ns, 11);
    for (int n = 0; n <= 10; ++n) {
      try {
        const double d = oracle_chain_difference(c, n, grid);
        if (d > worst) worst = d, where = name + " n=" + std::to_string(n);
      } catch (const Error& e) {
        return {false, name + " n=" + std::to_string(n) + ": " + e.what()};
      }
    }
  }
  return {worst <= 1e-7, "max |oracle - R_n| over 3 measures, n <= 10: " + sci(worst) + " (" + where + ")"};
}

Outcome ac5_zeros() {
  const Measure m = chebyshev();
  const SchurChain c = run_chain(m, vertical(16), 16);
  double outside = 0.0, imag = 0.0;
  bool ok = true;
  for (int n = 0; n <= 15; ++n) {
    const ZeroReport z = zero_check(c, n, m.interval());
    ok = ok && z.in_interval && z.interlace_q;
    outside = std::max(outside, z.max_outside);
    imag = std::max(imag, z.max_imag);
  }
  return {ok, "zeros of P_{n+1} inside, Q/P interlacing for n <= 15; max outside " + sci(outside) + ", max imag " +
                  sci(imag)};
}

Outcome ac6_resolvent() {
  const Measure m = chebyshev();
  const SchurChain c = run_chain(m, vertical(21), 21);
  std::vector<Complex> grid = circle(16, 3.0);
  for (Complex z : circle(16, 1.2, 0.0, 0.5)) grid.push_back(z);
  for (Complex z : random_upper(20, 61)) grid.push_back(z);
  double inv = 0.0, excess = -INFINITY;
  for (int n = 0; n <= 20; ++n) {
    const DenseMatrix j2 = build_section(c, 0, n).J2.dense();
    inv = std::max(inv, j2.inverse()(0, 0).real());
    for (Complex l : grid) excess = std::max(excess, std::abs(eval_convergent(c, n, l)) - 1.0 / m.interval().dist(l));
  }
  return {inv <= 1.0 + 1e-10 && excess <= 1e-10,
          "max <J2^-1 e0,e0> = " + sci(inv) + ", max |R_n| - 1/dist = " + sci(excess)};
}

Outcome ac7_convergence() {
  const SchurChain c = run_chain(chebyshev(), vertical(21), 21);
  const std::vector<Complex> grid = circle(16, 3.0, 0.0, 0.25);
  double worst20 = 0.0, worst_ratio = 0.0;
  for (Complex l : grid) {
    const double e5 = std::abs(eval_convergent(c, 5, l) - chebyshev_phi(l));
    const double e20 = std::abs(eval_convergent(c, 20, l) - chebyshev_phi(l));
    worst20 = std::max(worst20, e20);
    worst_ratio = std::max(worst_ratio, e20 / e5);
  }
  return {worst_ratio <= 0.1 && worst20 < 1e-6,
          "max err(n=20) = " + sci(worst20) + ", max err(20)/err(5) = " + sci(worst_ratio)};
}

Outcome ac8_biorthogonality() {
  const Measure m = chebyshev();
  const SchurChain c = run_chain(m, strip(10), 10);
  const BiorthSystem sys = build_system(from_chain(c, 8));
  const GramReport g = check_biorthogonality(sys, gram_by_quadrature(sys, m, 8), 1e-7, 1e-6);
  const DenseMatrix table = moment_table(sys.data, m, 9);
  const std::vector<Complex> pts{3i, 0.5 + 2i, -1.5 + 0.7i, 2.0 - 1i, -0.3 - 2.5i};
  double det = 0.0, pp = 0.0;
  for (int n = 0; n <= 8; ++n) det = std::max(det, determinant_route_error(sys, table, n, pts));
  for (int n = 1; n <= 8; ++n) pp = std::max(pp, pp_kap_residual(sys, table, n));
  return {g.pass && det <= 1e-6 && pp <= 1e-6, "Gram offdiag " + sci(g.max_offdiag) + ", diag " + sci(g.max_diag_rel) +
                                                   ", determinant route " + sci(det) + ", PP_kap " + sci(pp)};
}

Outcome ac9_first_order() {
  const Measure m = chebyshev();
  const SchurChain c = run_chain(m, strip(12), 12);
  const BiorthSystem sys = build_system(from_chain(c, 10));
  double mono = 0.0, st = 0.0;
  for (int n = 0; n <= 10; ++n) {
    const NuCoefficients nu = nu_coefficients(sys, n);
    mono = std::max({mono, std::abs(nu.nu1 + nu.nu2 - 1.0), std::abs(nu.nu3 + nu.nu4 - 1.0)});
    st = std::max(st, first_order_residual(sys, n));
  }
  // kappa_0 = kappa_1 with data obeying the restriction
  R2Data d = sys.data;
  d.kappa1 = d.kappa0;
  const KappaDegeneration k = kappa_degeneration_check(d);
  return {mono <= 1e-10 && st <= 1e-8 && k.constant && k.refused,
          "nu sums " + sci(mono) + ", S/T routes " + sci(st) + ", kappa spread " + sci(k.spread)};
}

Outcome ac10_pick() {
  const NodeSequence ns = vertical(11);
  bool genuine = true;
  for (const Measure& m : {chebyshev(), uniform(), scattered(), two_point()}) {
    std::vector<Complex> w;
    for (Complex z : ns.z) w.push_back(eval_markov(m, z));
    for (int N = 0; N <= 10; ++N) genuine = genuine && check_solvability(pick_forms(ns.z, w, m.interval(), N), 1e-10);
  }
  // conjugating one sample moves it into the lower half plane
  std::vector<Complex> w;
  for (Complex z : ns.z) w.push_back(eval_markov(chebyshev(), z));
  w[3] = std::conj(w[3]);
  const bool rejected = !check_solvability(pick_forms(ns.z, w, {-1.0, 1.0}, 10), 1e-10);
  const bool rejected_scalar = !check_solvability(pick_forms({1i}, {-1i}, {-1.0, 1.0}, 0), 1e-10);
  return {genuine && rejected && rejected_scalar,
          std::string("Markov samples ") + (genuine ? "accepted" : "REJECTED") + ", non-Nevanlinna samples " +
              (rejected && rejected_scalar ? "rejected" : "ACCEPTED")};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"AC1", ac1_exact_recovery}, {"AC2", ac2_interpolation}, {"AC3", ac3_operator_identity},
      {"AC4", ac4_oracle},         {"AC5", ac5_zeros},         {"AC6", ac6_resolvent},
      {"AC7", ac7_convergence},    {"AC8", ac8_biorthogonality}, {"AC9", ac9_first_order},
      {"AC10", ac10_pick}};
  int failed = 0;
  const auto start = std::chrono::steady_clock::now();
  for (const auto& [id, fn] : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("[%s] %s %s (%.3f s)\n", o.pass ? "PASS" : "FAIL", id.c_str(), o.detail.c_str(), secs);
    failed += o.pass ? 0 : 1;
  }
  const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("%d of %zu criteria passed in %.2f s\n", static_cast<int>(criteria.size()) - failed, criteria.size(), total);
  return failed == 0 && total < 60.0 ? 0 : 1;
}
