#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "mpade/biorth.hpp"
#include "mpade/error.hpp"

using namespace mpade;
using namespace mpade::fixtures;

namespace {

// alpha_n + r_n + 1 = 0 with random r, beta and off-axis poles
R2Data random_r2(int N, unsigned seed, Complex kappa0 = 1.0, Complex kappa1 = 2.0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  R2Data d;
  d.N = N;
  d.kappa0 = kappa0;
  d.kappa1 = kappa1;
  for (int n = 0; n <= N; ++n) {
    const Complex r = n == 0 ? Complex(1.0) : Complex(0.3 + 0.5 * std::abs(u(rng)), 0.2 * u(rng));
    d.r.push_back(r);
    d.alpha.push_back(n == 0 ? Complex(-1.0) : -1.0 - r);
    d.beta.emplace_back(u(rng), 0.3 * u(rng));
  }
  for (int n = 0; n <= N + 1; ++n) {
    d.a.emplace_back(u(rng), 1.0 + std::abs(u(rng)));
    d.b.emplace_back(u(rng), -1.0 - std::abs(u(rng)));
  }
  return d;
}

struct StripSystem {
  Measure m = chebyshev();
  SchurChain chain;
  BiorthSystem sys;
  DenseMatrix c;
};

const StripSystem& strip_system() {
  static const StripSystem s = [] {
    StripSystem t;
    t.chain = run_chain(t.m, strip(12), 12);
    t.sys = build_system(from_chain(t.chain, 10));
    t.c = moment_table(t.sys.data, t.m, 11);
    return t;
  }();
  return s;
}

std::vector<Complex> probes() { return {3i, 0.5 + 2i, -1.5 + 0.7i, 2.0 - 1i, -0.3 - 2.5i}; }

}  // namespace

TEST(FromChain, TwoPointByHand) {
  const SchurChain c = run_chain(two_point(), vertical(3, 1.0, 1.0), 3);
  const R2Data d = from_chain(c, 1, std::make_pair(Complex(1.0), Complex(0.5)));
  EXPECT_NEAR(std::abs(d.alpha[0] + 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(d.alpha[1] + 2.0), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(d.r[1] - 1.0), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(d.beta[1]), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(d.alpha[1] + d.r[1] + 1.0), 0.0, 1e-14);
  EXPECT_EQ(d.a[1], c.nodes[0]);
  EXPECT_EQ(d.b[1], std::conj(c.nodes[0]));
  EXPECT_NEAR(std::abs(d.a[0] - (-2.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(d.b[0] - 2.0), 0.0, 1e-15);
}

TEST(FromChain, KappaAndRestriction) {
  const StripSystem& s = strip_system();
  EXPECT_NEAR(std::abs(s.sys.data.kappa0 - 1.0), 0.0, 1e-14);
  EXPECT_NO_THROW(s.sys.data.validate(1e-10));
  for (int n = 1; n <= s.sys.data.N; ++n)
    EXPECT_LE(std::abs(s.sys.data.alpha[n] + s.sys.data.r[n] + 1.0), 1e-10);
  // the recursion reproduces the defining integrals
  for (int n = 0; n <= 6; ++n) {
    const Complex q = kappa_by_quadrature(s.chain, n);
    EXPECT_LE(std::abs(s.sys.kappa[n] - q), 1e-8 * std::abs(q)) << "n=" << n;
  }
}

TEST(FromChain, SuppliedEqualKappasRefused) {
  // kappa_1 = int t^2 / (t^2 + 1) dsigma = 1/2 for the symmetric pair, so only a
  // supplied equal pair is refused
  const SchurChain c = run_chain(two_point(), vertical(3, 1.0, 1.0), 3);
  try {
    from_chain(c, 1, std::make_pair(Complex(1.0), Complex(1.0)));
    FAIL() << "expected KappaDegenerate";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::KappaDegenerate);
  }
  EXPECT_NEAR(std::abs(kappa_by_quadrature(c, 1) - 0.5), 0.0, 1e-15);
}

TEST(BuildSystem, InitialTerms) {
  const R2Data d = random_r2(4, 1);
  const BiorthSystem s = build_system(d);
  EXPECT_EQ(s.xi[0], Complex(0.0));
  for (Complex z : probes()) {
    EXPECT_NEAR(std::abs(s.U[0](z) - 1.0), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(s.V[0](z) - 1.0), 0.0, 1e-15);
  }
  EXPECT_NEAR(std::abs(s.P[1].coeff(0) + d.beta[0]), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(s.P[1].lead() - 1.0), 0.0, 1e-15);
  const Complex k0 = d.kappa0, k1 = d.kappa1;
  EXPECT_NEAR(std::abs(s.S[1].coeff(0) - (d.a[1] * k1 - d.beta[0] * k0) / (k0 - k1)), 0.0, 1e-13);
  EXPECT_NEAR(std::abs(s.T[1].coeff(0) - (d.b[1] * k1 - d.beta[0] * k0) / (k0 - k1)), 0.0, 1e-13);
  EXPECT_NEAR(std::abs(s.h[0] - k0), 0.0, 1e-15);
  for (int n = 0; n <= 4; ++n) {
    EXPECT_EQ(s.P[n].degree(), n);
    EXPECT_NEAR(std::abs(s.S[n].lead() - 1.0), 0.0, 1e-13);
    EXPECT_NEAR(std::abs(s.T[n].lead() - 1.0), 0.0, 1e-13);
    EXPECT_GT(std::abs(s.h[n]), 0.0);
  }
}

TEST(BuildSystem, PolesOfU) {
  const BiorthSystem s = build_system(random_r2(3, 2));
  for (int n = 1; n <= 3; ++n) {
    ASSERT_TRUE(s.U[n].poles.has_value());
    ASSERT_EQ(static_cast<int>(s.U[n].poles->size()), n);
    for (int k = 0; k < n; ++k) {
      EXPECT_EQ((*s.U[n].poles)[k], s.data.a[k + 1]);
      EXPECT_EQ((*s.V[n].poles)[k], s.data.b[k + 1]);
    }
  }
}

TEST(R2Data, ValidationErrors) {
  R2Data d = random_r2(3, 3);
  d.alpha[2] += 0.1;
  EXPECT_THROW(d.validate(), Error);
  R2Data e = random_r2(3, 3);
  e.b[2] = e.a[2];
  try {
    e.validate();
    FAIL() << "expected EqualPoles";
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), Errc::EqualPoles);
  }
}

TEST(Biorthogonality, ChebyshevGramTwoRoutes) {
  const StripSystem& s = strip_system();
  const GramReport by_moments = check_biorthogonality(s.sys, gram_from_moments(s.sys, s.c, 8));
  EXPECT_TRUE(by_moments.pass) << by_moments.max_offdiag << " " << by_moments.max_diag_rel;
  const GramReport by_quad = check_biorthogonality(s.sys, gram_by_quadrature(s.sys, s.m, 8));
  EXPECT_TRUE(by_quad.pass) << by_quad.max_offdiag << " " << by_quad.max_diag_rel;
  EXPECT_NEAR(std::abs(by_quad.G(0, 0) - s.sys.kappa[0]), 0.0, 1e-13);
}

TEST(Biorthogonality, PerturbedXiBreaksIt) {
  BiorthSystem sys = strip_system().sys;
  sys.xi[2] += 1e-3;
  const DenseMatrix G = gram_from_moments(sys, strip_system().c, 8);
  double hmax = 0.0;
  for (int n = 0; n <= 8; ++n) hmax = std::max(hmax, std::abs(sys.h[n]));
  EXPECT_GT(std::abs(G(2, 1)), 1e-7 * hmax);
  EXPECT_FALSE(check_biorthogonality(sys, G).pass);
}

TEST(DeterminantForms, SmallCases) {
  const StripSystem& s = strip_system();
  const DeterminantForm f0 = determinant_forms(s.sys, s.c, 0);
  EXPECT_EQ(f0.delta, Complex(1.0));
  ASSERT_EQ(f0.u_coeffs.size(), 1u);
  EXPECT_NEAR(std::abs(f0.u_coeffs[0] - 1.0), 0.0, 1e-14);

  const DeterminantForm f1 = determinant_forms(s.sys, s.c, 1);
  EXPECT_NEAR(std::abs(f1.delta - s.c(0, 0)), 0.0, 1e-15);
  const Complex z = 3i;
  const Complex rec = s.sys.P[1](z) / (z - s.sys.data.a[1]) - s.sys.xi[1];
  EXPECT_LE(std::abs(eval_basis(f1.u_coeffs, s.sys.data.a, z) - rec), 1e-12 * std::abs(rec));
}

TEST(DeterminantForms, AgreeWithRecurrence) {
  const StripSystem& s = strip_system();
  for (int n = 0; n <= 8; ++n) EXPECT_LE(determinant_route_error(s.sys, s.c, n, probes()), 1e-6) << "n=" << n;
}

TEST(DeterminantForms, GramDiagonalFromDeterminants) {
  const StripSystem& s = strip_system();
  for (int n = 1; n <= 8; ++n) {
    const Complex d0 = delta_n(s.c, n), d1 = delta_n(s.c, n + 1);
    const Complex g = d1 / d0 * s.sys.P[n](s.sys.data.a[n]) * s.sys.P[n](s.sys.data.b[n]);
    EXPECT_LE(std::abs(g - s.sys.h[n]), 1e-6 * std::abs(s.sys.h[n])) << "n=" << n;
  }
}

TEST(DeterminantForms, SingularDelta) {
  DenseMatrix c = DenseMatrix::Ones(3, 3);
  try {
    delta_n(c, 2);
    FAIL() << "expected SingularDelta";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::SingularDelta);
  }
}

TEST(PpKap, UpToTen) {
  const StripSystem& s = strip_system();
  for (int n = 1; n <= 10; ++n) EXPECT_LE(pp_kap_residual(s.sys, s.c, n), 1e-6) << "n=" << n;
  EXPECT_THROW(pp_kap_residual(s.sys, s.c, 0), Error);
}

TEST(FirstOrderSystem, RandomData) {
  for (unsigned seed = 10; seed < 15; ++seed) {
    const BiorthSystem s = build_system(random_r2(6, seed));
    for (int n = 0; n <= 6; ++n) {
      const NuCoefficients nu = nu_coefficients(s, n);
      EXPECT_LE(std::abs(nu.nu1 + nu.nu2 - 1.0), 1e-10);
      EXPECT_LE(std::abs(nu.nu3 + nu.nu4 - 1.0), 1e-10);
      EXPECT_LE(first_order_residual(s, n), 1e-8) << "seed " << seed << " n=" << n;
      if (n >= 1) EXPECT_LE(p_recovery_residual(s, n), 1e-8);
    }
  }
}

TEST(FirstOrderSystem, StartStepMatchesClosedForm) {
  const BiorthSystem s = build_system(random_r2(2, 21));
  const auto [s1, t1] = first_order_step(s, 0);
  const Complex k0 = s.data.kappa0, k1 = s.data.kappa1;
  EXPECT_NEAR(std::abs(s1.lead() - 1.0), 0.0, 1e-13);
  EXPECT_NEAR(std::abs(s1.coeff(0) - (s.data.a[1] * k1 - s.data.beta[0] * k0) / (k0 - k1)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(t1.coeff(0) - (s.data.b[1] * k1 - s.data.beta[0] * k0) / (k0 - k1)), 0.0, 1e-12);
}

TEST(FirstOrderSystem, ChebyshevChain) {
  const StripSystem& s = strip_system();
  for (int n = 0; n <= 10; ++n) {
    const NuCoefficients nu = nu_coefficients(s.sys, n);
    EXPECT_LE(std::abs(nu.nu1 + nu.nu2 - 1.0), 1e-10);
    EXPECT_LE(std::abs(nu.nu3 + nu.nu4 - 1.0), 1e-10);
    EXPECT_LE(first_order_residual(s.sys, n), 1e-8) << "n=" << n;
  }
}

TEST(FirstOrderSystem, EqualPoles) {
  BiorthSystem s = build_system(random_r2(3, 4));
  s.data.b[2] = s.data.a[2];
  try {
    nu_coefficients(s, 2);
    FAIL() << "expected EqualPoles";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::EqualPoles);
  }
}

TEST(KappaDegeneration, EqualStartIsConstant) {
  const KappaDegeneration k = kappa_degeneration_check(random_r2(8, 5, 1.0, 1.0));
  EXPECT_TRUE(k.constant);
  EXPECT_LE(k.spread, 1e-10);
  EXPECT_TRUE(k.refused);
}

TEST(KappaDegeneration, GenericStartMoves) {
  const R2Data d = random_r2(4, 6, 1.0, 2.0);
  const auto kap = kappa_sequence(d.alpha, d.r, d.kappa0, d.kappa1, 4);
  EXPECT_GT(std::abs(kap[2] - kap[1]), 1e-6);
  EXPECT_FALSE(kappa_degeneration_check(d).constant);
}

TEST(KappaDegeneration, BrokenRestrictionNotConstant) {
  R2Data d = random_r2(6, 7, 1.0, 1.0);
  d.alpha[3] += 0.05;
  const auto kap = kappa_sequence(d.alpha, d.r, d.kappa0, d.kappa1, 8);
  double spread = 0.0;
  for (Complex x : kap) spread = std::max(spread, std::abs(x - kap[0]));
  EXPECT_GT(spread, 1e-6);
}

TEST(RRecurrences, BothPoleOrders) {
  const BiorthSystem s = build_system(random_r2(5, 8));
  EXPECT_LE(r_recurrence_residual(s, 1, 5.0 + 1i, 1), 1e-12);
  EXPECT_LE(r_recurrence_residual(s, 1, 5.0 + 1i, 2), 1e-12);
  for (int n = 1; n <= 5; ++n)
    for (Complex z : probes()) {
      EXPECT_LE(r_recurrence_residual(s, n, z, 1), 1e-9);
      EXPECT_LE(r_recurrence_residual(s, n, z, 2), 1e-9);
    }
}
