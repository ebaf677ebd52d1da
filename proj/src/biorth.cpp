#include "mpade/biorth.hpp"

#include <algorithm>
#include <cmath>

#include "mpade/error.hpp"
#include "mpade/recurrence.hpp"

namespace mpade {

namespace {

constexpr double kUnitXi = 1e-12;

Polynomial pole_product(const std::vector<Complex>& poles, int n) {
  return Polynomial::from_roots(std::vector<Complex>(poles.begin() + 1, poles.begin() + 1 + n));
}

Polynomial st_poly(const BiorthSystem& sys, int n, const std::vector<Complex>& poles) {
  if (n == 0) return Polynomial::constant(1.0);
  return (sys.P[n] - Polynomial::linear(poles[n]) * sys.P[n - 1] * sys.xi[n]) * (1.0 / (1.0 - sys.xi[n]));
}

/// Expansion of num / prod_{k=1..n}(z - poles_k) over 1, 1/(z - p_1), 1/((z - p_1)(z - p_2)), ...
std::vector<Complex> expand(std::vector<Complex> num, const std::vector<Complex>& poles, int n) {
  num.resize(std::max<std::size_t>(num.size(), n + 1), 0.0);
  std::vector<Complex> g(n + 1);
  for (int k = n; k >= 1; --k) {
    // synthetic division by (z - poles_k)
    const int d = static_cast<int>(num.size()) - 1;
    std::vector<Complex> q(std::max(d, 1), 0.0);
    Complex carry = 0.0;
    for (int i = d; i >= 1; --i) {
      carry = num[i] + carry * poles[k];
      q[i - 1] = carry;
    }
    g[k] = num[0] + carry * poles[k];
    num = std::move(q);
  }
  g[0] = num.empty() ? Complex{} : num[0];
  return g;
}

std::vector<Complex> basis_coeffs(const BiorthSystem& sys, int n, const std::vector<Complex>& poles) {
  if (n < 0 || n > sys.data.N) throw Error(Errc::InvalidArgument, "basis index out of range");
  if (n == 0) return {1.0};
  const Polynomial num = sys.P[n] - Polynomial::linear(poles[n]) * sys.P[n - 1] * sys.xi[n];
  return expand(num.coeffs(), poles, n);
}

double coeff_distance(const Polynomial& x, const Polynomial& y) {
  double d = 0.0;
  for (int k = 0; k <= std::max(x.degree(), y.degree()); ++k) d = std::max(d, std::abs(x.coeff(k) - y.coeff(k)));
  return d / std::max(1.0, y.max_abs_coeff());
}

}  // namespace

void R2Data::validate(double tol) const {
  const std::size_t n1 = N + 1, n2 = N + 2;
  if (N < 0 || alpha.size() != n1 || beta.size() != n1 || r.size() != n1 || a.size() != n2 || b.size() != n2)
    throw Error(Errc::InvalidArgument, "R_II data sizes do not match N");
  if (std::abs(alpha[0] + 1.0) > tol) throw Error(Errc::InvariantViolated, "alpha_0 must be -1");
  for (int n = 1; n <= N; ++n) {
    if (std::abs(r[n]) == 0.0) throw Error(Errc::InvalidArgument, "r_n = 0 at n = " + std::to_string(n));
    if (std::abs(alpha[n] + r[n] + 1.0) > tol * (1.0 + std::abs(r[n])))
      throw Error(Errc::InvariantViolated, "alpha_n + r_n + 1 != 0 at n = " + std::to_string(n));
  }
  for (int n = 0; n <= N + 1; ++n)
    if (a[n] == b[n]) throw Error(Errc::EqualPoles, "a_n = b_n at n = " + std::to_string(n));
}

Complex kappa_by_quadrature(const SchurChain& chain, int n) {
  if (chain.measure.size() == 0) throw Error(Errc::InvalidArgument, "chain carries no measure");
  Polynomial p = Polynomial::constant(1.0);
  if (n > 0) {
    p = build_polys(chain, n - 1).P[n];
    p = p * (1.0 / p.lead());
  }
  std::vector<Complex> z;
  const auto c = chain.coefficients();
  for (int k = 0; k < n; ++k) z.push_back(c[k].z);
  return integrate(chain.measure, [&](double t) {
    Complex v = p(t) * std::pow(t, n);
    for (Complex zk : z) v /= std::norm(t - zk);
    return v;
  });
}

R2Data from_chain(const SchurChain& chain, int N, std::optional<std::pair<Complex, Complex>> kappa) {
  const auto c = chain.coefficients();
  if (N < 0) throw Error(Errc::InvalidArgument, "N must be nonnegative");
  if (static_cast<int>(c.size()) < N + 1) throw Error(Errc::ChainTooShort, "chain shorter than N + 1");
  std::vector<double> lc(N + 2);
  lc[0] = 1.0;
  lc[1] = c[0].a2;
  for (int n = 1; n <= N; ++n) {
    const double x = c[n].a2 * lc[n], y = c[n - 1].b * c[n - 1].b * lc[n - 1];
    lc[n + 1] = x - y;
    if (std::abs(lc[n + 1]) <= 1e-14 * (std::abs(x) + std::abs(y)))
      throw Error(Errc::DegenerateLeading, "leading coefficient vanishes at n = " + std::to_string(n + 1));
  }
  R2Data d;
  d.N = N;
  d.alpha.resize(N + 1);
  d.beta.resize(N + 1);
  d.r.resize(N + 1);
  d.a.resize(N + 2);
  d.b.resize(N + 2);
  for (int n = 0; n <= N; ++n) {
    d.alpha[n] = -c[n].a2 * lc[n] / lc[n + 1];
    d.beta[n] = c[n].a1 * lc[n] / lc[n + 1];
    d.r[n] = n == 0 ? 1.0 : c[n - 1].b * c[n - 1].b * lc[n - 1] / lc[n + 1];
  }
  const Interval iv = chain.measure.size() ? chain.measure.interval() : Interval{};
  d.a[0] = iv.alpha - 1.0;
  d.b[0] = iv.beta + 1.0;
  for (int k = 1; k <= N + 1; ++k) {
    if (k - 1 >= static_cast<int>(c.size())) throw Error(Errc::ChainTooShort, "pole beyond the chain");
    d.a[k] = c[k - 1].z;
    d.b[k] = std::conj(c[k - 1].z);
  }
  if (kappa) {
    d.kappa0 = kappa->first;
    d.kappa1 = kappa->second;
  } else {
    d.kappa0 = kappa_by_quadrature(chain, 0);
    d.kappa1 = kappa_by_quadrature(chain, 1);
  }
  if (std::abs(d.kappa0 - d.kappa1) <= 1e-12 * std::max(std::abs(d.kappa0), std::abs(d.kappa1)))
    throw Error(Errc::KappaDegenerate, "kappa0 = kappa1");
  return d;
}

std::vector<Complex> kappa_sequence(const std::vector<Complex>& alpha, const std::vector<Complex>& r, Complex kappa0,
                                    Complex kappa1, int count) {
  std::vector<Complex> k{kappa0, kappa1};
  k.resize(std::max(count, 2));
  for (int n = 1; n + 1 < count; ++n) k[n + 1] = -alpha.at(n) * k[n] - r.at(n) * k[n - 1];
  k.resize(count);
  return k;
}

BiorthSystem build_system(const R2Data& data) {
  data.validate();
  if (std::abs(data.kappa0 - data.kappa1) <= 1e-12 * std::max(std::abs(data.kappa0), std::abs(data.kappa1)))
    throw Error(Errc::KappaDegenerate, "kappa0 = kappa1");
  const int N = data.N;
  BiorthSystem s;
  s.data = data;
  s.kappa = kappa_sequence(data.alpha, data.r, data.kappa0, data.kappa1, N + 2);
  for (int n = 0; n <= N + 1; ++n)
    if (s.kappa[n] == 0.0) throw Error(Errc::KappaDegenerate, "kappa_n = 0 at n = " + std::to_string(n));

  s.P.push_back(Polynomial::constant(1.0));
  s.P.push_back(Polynomial({-data.beta[0], 1.0}));
  for (int n = 1; n <= N; ++n) {
    const Polynomial lin({data.beta[n], data.alpha[n]});
    const Polynomial quad = Polynomial::linear(data.a[n]) * Polynomial::linear(data.b[n]);
    s.P.push_back((lin * s.P[n] + quad * s.P[n - 1] * data.r[n]) * -1.0);
  }

  s.xi.assign(N + 2, 0.0);
  for (int n = 1; n <= N + 1; ++n) {
    s.xi[n] = s.kappa[n] / s.kappa[n - 1];
    if (std::abs(s.xi[n] - 1.0) <= kUnitXi) throw Error(Errc::XiUnit, "xi_n = 1 at n = " + std::to_string(n));
  }
  s.h.assign(N + 1, 0.0);
  s.h[0] = s.kappa[0];
  for (int n = 1; n <= N; ++n) s.h[n] = s.xi[n] * (s.kappa[n - 1] - s.kappa[n]);

  for (int n = 0; n <= N + 1; ++n) {
    s.S.push_back(st_poly(s, n, data.a));
    s.T.push_back(st_poly(s, n, data.b));
  }
  for (int n = 0; n <= N; ++n) {
    const std::vector<Complex> pa(data.a.begin() + 1, data.a.begin() + 1 + n);
    const std::vector<Complex> pb(data.b.begin() + 1, data.b.begin() + 1 + n);
    s.U.push_back({s.S[n] * (1.0 - s.xi[n]), pole_product(data.a, n), pa});
    s.V.push_back({s.T[n] * (1.0 - s.xi[n]), pole_product(data.b, n), pb});
  }
  return s;
}

DenseMatrix moment_table(const R2Data& data, const Measure& m, int n) {
  if (n < 0 || n > data.N + 1) throw Error(Errc::InvalidArgument, "moment table larger than the pole data");
  for (int k = 1; k <= n; ++k)
    for (Complex p : {data.a[k], data.b[k]})
      if (std::abs(p.imag()) < 1e-10 && p.real() >= m.interval().alpha - 1e-10 && p.real() <= m.interval().beta + 1e-10)
        throw Error(Errc::PoleOnSupport, "pole on the interval");
  DenseMatrix c = DenseMatrix::Zero(n + 1, n + 1);
  std::vector<Complex> ia(n + 1), ib(n + 1);
  for (std::size_t i = 0; i < m.size(); ++i) {
    const double t = m.nodes()[i];
    ia[0] = ib[0] = 1.0;
    for (int k = 1; k <= n; ++k) {
      ia[k] = ia[k - 1] / (t - data.a[k]);
      ib[k] = ib[k - 1] / (t - data.b[k]);
    }
    for (int k = 0; k <= n; ++k)
      for (int l = 0; l <= n; ++l) c(k, l) += m.masses()[i] * ia[k] * ib[l];
  }
  return c;
}

std::vector<Complex> u_basis_coeffs(const BiorthSystem& sys, int n) { return basis_coeffs(sys, n, sys.data.a); }
std::vector<Complex> v_basis_coeffs(const BiorthSystem& sys, int n) { return basis_coeffs(sys, n, sys.data.b); }

Complex eval_basis(const std::vector<Complex>& coeffs, const std::vector<Complex>& poles, Complex z) {
  Complex v = 0.0, inv = 1.0;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (k > 0) inv /= z - poles[k];
    v += coeffs[k] * inv;
  }
  return v;
}

DenseMatrix gram_from_moments(const BiorthSystem& sys, const DenseMatrix& c, int N) {
  if (c.rows() < N + 1) throw Error(Errc::InvalidArgument, "moment table too small");
  DenseMatrix G(N + 1, N + 1);
  std::vector<std::vector<Complex>> u, v;
  for (int n = 0; n <= N; ++n) {
    u.push_back(u_basis_coeffs(sys, n));
    v.push_back(v_basis_coeffs(sys, n));
  }
  for (int n = 0; n <= N; ++n)
    for (int m = 0; m <= N; ++m) {
      Complex s = 0.0;
      for (int k = 0; k <= n; ++k)
        for (int l = 0; l <= m; ++l) s += u[n][k] * v[m][l] * c(k, l);
      G(n, m) = s;
    }
  return G;
}

DenseMatrix gram_by_quadrature(const BiorthSystem& sys, const Measure& m, int N) {
  if (N > sys.data.N) throw Error(Errc::InvalidArgument, "Gram size beyond the system");
  std::vector<std::vector<Complex>> u, v;
  for (int n = 0; n <= N; ++n) {
    u.push_back(u_basis_coeffs(sys, n));
    v.push_back(v_basis_coeffs(sys, n));
  }
  DenseMatrix G = DenseMatrix::Zero(N + 1, N + 1);
  std::vector<Complex> uv(N + 1), vv(N + 1);
  for (std::size_t i = 0; i < m.size(); ++i) {
    const double t = m.nodes()[i];
    for (int n = 0; n <= N; ++n) {
      uv[n] = eval_basis(u[n], sys.data.a, t);
      vv[n] = eval_basis(v[n], sys.data.b, t);
    }
    for (int n = 0; n <= N; ++n)
      for (int k = 0; k <= N; ++k) G(n, k) += m.masses()[i] * uv[n] * vv[k];
  }
  return G;
}

GramReport check_biorthogonality(const BiorthSystem& sys, const DenseMatrix& G, double off_tol, double diag_tol) {
  GramReport r{G, 0.0, 0.0, false};
  double hmax = 0.0;
  for (int n = 0; n < G.rows(); ++n) hmax = std::max(hmax, std::abs(sys.h.at(n)));
  for (int n = 0; n < G.rows(); ++n)
    for (int m = 0; m < G.cols(); ++m) {
      if (n == m)
        r.max_diag_rel = std::max(r.max_diag_rel, std::abs(G(n, n) - sys.h[n]) / std::abs(sys.h[n]));
      else
        r.max_offdiag = std::max(r.max_offdiag, std::abs(G(n, m)) / hmax);
    }
  r.pass = r.max_offdiag <= off_tol && r.max_diag_rel <= diag_tol;
  return r;
}

Complex delta_n(const DenseMatrix& c, int n) {
  if (n == 0) return 1.0;
  const DenseMatrix block = c.topLeftCorner(n, n);
  Eigen::FullPivLU<DenseMatrix> lu(block);
  lu.setThreshold(1e-15);
  if (lu.rank() < n) throw Error(Errc::SingularDelta, "Delta_" + std::to_string(n) + " vanishes");
  return lu.determinant();
}

DeterminantForm determinant_forms(const BiorthSystem& sys, const DenseMatrix& c, int n) {
  if (n < 0 || n > sys.data.N || c.rows() < n + 1) throw Error(Errc::InvalidArgument, "determinant index out of range");
  DeterminantForm f;
  f.delta = delta_n(c, n);
  if (n == 0) {
    f.u_coeffs = f.v_coeffs = {1.0};
    return f;
  }
  auto cofactors = [&](bool transpose_moments, Complex scale) {
    std::vector<Complex> x(n + 1);
    for (int k = 0; k <= n; ++k) {
      DenseMatrix minor(n, n);
      for (int i = 0; i < n; ++i)
        for (int col = 0, j = 0; col <= n; ++col) {
          if (col == k) continue;
          minor(i, j++) = transpose_moments ? c(col, i) : c(i, col);
        }
      const double sign = (n + k) % 2 == 0 ? 1.0 : -1.0;
      x[k] = sign * dense_det(minor) * scale / f.delta;
    }
    return x;
  };
  f.u_coeffs = cofactors(true, sys.P[n](sys.data.a[n]));
  f.v_coeffs = cofactors(false, sys.P[n](sys.data.b[n]));
  return f;
}

double determinant_route_error(const BiorthSystem& sys, const DenseMatrix& c, int n, const std::vector<Complex>& points) {
  const DeterminantForm f = determinant_forms(sys, c, n);
  double worst = 0.0;
  for (Complex z : points) {
    const Complex u = sys.U[n](z), v = sys.V[n](z);
    worst = std::max(worst, std::abs(eval_basis(f.u_coeffs, sys.data.a, z) - u) / std::abs(u));
    worst = std::max(worst, std::abs(eval_basis(f.v_coeffs, sys.data.b, z) - v) / std::abs(v));
  }
  return worst;
}

double pp_kap_residual(const BiorthSystem& sys, const DenseMatrix& c, int n) {
  if (n < 1) throw Error(Errc::InvalidArgument, "relation starts at n = 1");
  if (c.rows() < n + 1) throw Error(Errc::InvalidArgument, "moment table too small");
  const Complex lhs = sys.P[n](sys.data.a[n]) * sys.P[n](sys.data.b[n]);
  const Complex rhs = delta_n(c, n) / delta_n(c, n + 1) * sys.kappa[n] * (1.0 - sys.kappa[n] / sys.kappa[n - 1]);
  return std::abs(lhs - rhs) / std::max(std::abs(rhs), std::abs(lhs));
}

NuCoefficients nu_coefficients(const BiorthSystem& sys, int n) {
  const R2Data& d = sys.data;
  if (n < 0 || n > d.N) throw Error(Errc::InvalidArgument, "nu index out of range");
  const Complex an = d.a[n], bn = d.b[n];
  if (an == bn) throw Error(Errc::EqualPoles, "a_n = b_n");
  if (n == 0) {
    const Complex k0 = d.kappa0, k1 = d.kappa1, b0 = d.beta[0];
    const Complex den = (bn - an) * (k0 - k1);
    return {(k0 * (b0 - an) + k1 * (an - d.a[1])) / den, (k0 * (b0 - bn) + k1 * (bn - d.a[1])) / -den,
            (k0 * (b0 - an) + k1 * (an - d.b[1])) / den, (k0 * (b0 - bn) + k1 * (bn - d.b[1])) / -den};
  }
  const Complex x = sys.xi[n] * d.beta[n], xx = sys.xi[n] * sys.xi[n + 1], rn = d.r[n];
  const Complex den = rn * (bn - an);
  return {(x - xx * d.a[n + 1] - rn * an) / den, (x - xx * d.a[n + 1] - rn * bn) / -den,
          (x - xx * d.b[n + 1] - rn * an) / den, (x - xx * d.b[n + 1] - rn * bn) / -den};
}

std::pair<Polynomial, Polynomial> first_order_step(const BiorthSystem& sys, int n) {
  const NuCoefficients nu = nu_coefficients(sys, n);
  const Polynomial zs = Polynomial::linear(sys.data.b[n]) * sys.S[n];
  const Polynomial zt = Polynomial::linear(sys.data.a[n]) * sys.T[n];
  return {zs * nu.nu1 + zt * nu.nu2, zs * nu.nu3 + zt * nu.nu4};
}

double first_order_residual(const BiorthSystem& sys, int n) {
  const auto [s, t] = first_order_step(sys, n);
  return std::max(coeff_distance(s, sys.S[n + 1]), coeff_distance(t, sys.T[n + 1]));
}

double p_recovery_residual(const BiorthSystem& sys, int n) {
  const R2Data& d = sys.data;
  if (n < 1 || n > d.N) throw Error(Errc::InvalidArgument, "recovery index out of range");
  const Complex num = d.r[n] * (1.0 - sys.xi[n]);
  const Complex z1 = num / (d.r[n] * (d.b[n] - d.a[n + 1]) - sys.xi[n] * (d.beta[n] + d.alpha[n] * d.a[n + 1]));
  const Complex z2 = num / (d.r[n] * (d.a[n] - d.b[n + 1]) - sys.xi[n] * (d.beta[n] + d.alpha[n] * d.b[n + 1]));
  const Polynomial ps = (sys.S[n + 1] - Polynomial::linear(d.b[n]) * sys.S[n]) * z1;
  const Polynomial pt = (sys.T[n + 1] - Polynomial::linear(d.a[n]) * sys.T[n]) * z2;
  return std::max(coeff_distance(ps, sys.P[n]), coeff_distance(pt, sys.P[n]));
}

KappaDegeneration kappa_degeneration_check(const R2Data& data) {
  KappaDegeneration k;
  const auto seq = kappa_sequence(data.alpha, data.r, data.kappa0, data.kappa1, data.N + 2);
  for (Complex x : seq) k.spread = std::max(k.spread, std::abs(x - seq[0]) / std::abs(seq[0]));
  k.constant = k.spread <= 1e-10;
  try {
    build_system(data);
  } catch (const Error& e) {
    k.refused = e.code() == Errc::KappaDegenerate;
  }
  return k;
}

double r_recurrence_residual(const BiorthSystem& sys, int n, Complex l, int which) {
  const R2Data& d = sys.data;
  if (n < 1 || n > d.N) throw Error(Errc::InvalidArgument, "recurrence index out of range");
  const auto& own = which == 1 ? d.a : d.b;
  const auto& other = which == 1 ? d.b : d.a;
  auto R = [&](int k) {
    Complex den = 1.0;
    for (int i = 1; i <= k; ++i) den *= l - own[i];
    return sys.P[k](l) / den;
  };
  const Complex t1 = (l - own[n + 1]) * R(n + 1), t2 = (d.alpha[n] * l + d.beta[n]) * R(n),
                t3 = d.r[n] * (l - other[n]) * R(n - 1);
  return std::abs(t1 + t2 + t3) / (std::abs(t1) + std::abs(t2) + std::abs(t3));
}

}  // namespace mpade
