#include <algorithm>
#include <cmath>
#include <functional>

#include "mpade/biorth.hpp"
#include "mpade/cli.hpp"
#include "mpade/error.hpp"
#include "mpade/oracle.hpp"
#include "mpade/pencil.hpp"
#include "mpade/recurrence.hpp"

namespace mpade::cli {

namespace {

constexpr int kSpectralCap = 15;
constexpr int kBiorthCap = 8;
constexpr int kOracleCap = 10;
constexpr int kDividedDifferenceCap = 6;

SchurChain faulted_copy(const SchurChain& chain, const FaultSpec& f) {
  std::vector<SchurStep> steps = chain.steps;
  std::optional<SchurStep> terminal = chain.terminal;
  SchurStep* s = nullptr;
  if (f.step >= 0 && f.step < static_cast<int>(steps.size()))
    s = &steps[f.step];
  else if (terminal && f.step == static_cast<int>(steps.size()))
    s = &*terminal;
  else
    throw Error(Errc::InvalidArgument, "fault step outside the chain");
  (f.field == "a1" ? s->a1 : f.field == "a2" ? s->a2 : s->b) += f.delta;
  return chain_from_coefficients(std::move(steps), terminal);
}

CheckReport flag(std::string name, bool ok, std::string detail = {}) {
  return make_report(std::move(name), ok ? 0.0 : 1.0, 0.5, std::move(detail));
}

struct Suite {
  const ExperimentConfig& cfg;
  const std::string& only;
  std::vector<CheckEntry> out;

  void add(const std::string& module, const std::string& name, const std::function<CheckReport()>& fn) {
    if (!only.empty() && only != module) return;
    CheckReport r;
    try {
      r = fn();
      r.name = name;
    } catch (const std::exception& e) {
      r = CheckReport{name, INFINITY, 0.0, false, e.what()};
    }
    out.push_back({module, r});
  }
};

}  // namespace

std::vector<CheckEntry> run_checks(const ExperimentConfig& cfg, const std::string& only) {
  if (!only.empty() && only != "schur" && only != "recurrence" && only != "pencil" && only != "biorth" && only != "oracle")
    throw ConfigError("--only", "unknown module \"" + only + "\"");
  const SchurChain chain = run_chain(cfg.measure, cfg.nodes, std::min<int>(cfg.n_max + 1, cfg.nodes.size()),
                                     cfg.eps_degenerate);
  const SchurChain pencil_chain = cfg.fault ? faulted_copy(chain, *cfg.fault) : chain;
  const Measure& m = chain.measure;
  const Interval iv = m.interval();
  const int avail = static_cast<int>(chain.coefficients().size());
  const int n = std::min(cfg.n_max, avail - 1);
  if (n < 0) throw Error(Errc::ChainTooShort, "no chain coefficients to check");
  const std::string nd = "n=" + std::to_string(n);
  std::vector<Complex> upper;
  for (Complex l : cfg.grid)
    if (l.imag() > 0) upper.push_back(l);
  for (Complex l : {Complex(0.3, 0.05), Complex(-2.0, 0.5), Complex(0.0, 4.0)}) upper.push_back(iv.alpha + (iv.beta - iv.alpha) * 0.5 * (l + 1.0));

  Suite s{cfg, only, {}};

  // schur
  s.add("schur", "pick_solvability", [&] {
    const int np = std::min(n, 10);
    std::vector<Complex> z, w;
    for (int k = 0; k <= np; ++k) {
      z.push_back(cfg.nodes[k]);
      w.push_back(eval_markov(m, cfg.nodes[k]));
    }
    const PickForms pf = pick_forms(z, w, iv, np);
    double worst = 0.0;
    for (const DenseMatrix* k : {&pf.K_alpha, &pf.K_beta}) {
      const auto e = sym_eigs(*k);
      worst = std::max(worst, -e.front() / std::max(std::abs(e.back()), 1e-300));
    }
    return make_report("", std::max(worst, 0.0), 1e-10, "N=" + std::to_string(np));
  });
  s.add("schur", "pick_negative_control", [&] {
    const int np = std::min(n, 10);
    std::vector<Complex> z, w;
    for (int k = 0; k <= np; ++k) {
      z.push_back(cfg.nodes[k]);
      w.push_back(std::conj(eval_markov(m, cfg.nodes[k])));
    }
    return flag("", !check_solvability(pick_forms(z, w, iv, np), 1e-10), "conjugated samples must be rejected");
  });
  s.add("schur", "tail_nevanlinna", [&] {
    double worst = 0.0;
    for (int j = 0; j < static_cast<int>(chain.steps.size()) && j <= n; ++j)
      for (Complex l : upper) {
        const Complex v = phi_chain_eval(chain, j, l);
        worst = std::max(worst, -v.imag() / std::abs(v));
      }
    return make_report("", std::max(worst, 0.0), 1e-12);
  });
  s.add("schur", "interpolation", [&] {
    double worst = 0.0;
    for (int k = 0; k <= n; ++k)
      worst = std::max(worst, std::abs(eval_convergent(chain, n, cfg.nodes[k]) - eval_markov(m, cfg.nodes[k])));
    return make_report("", worst, 1e-8, nd);
  });
  s.add("schur", "tail_recovery", [&] {
    const int k = std::min(3, static_cast<int>(chain.steps.size()) - 2);
    if (k < 0) return make_report("", 0.0, 1e-9, "chain too short, skipped");
    double worst = 0.0;
    for (Complex l : upper) {
      const Complex v = recover_from_tail(chain, k, [&](Complex x) { return phi_chain_eval(chain, k + 1, x); }, l);
      const Complex phi = eval_markov(m, l);
      worst = std::max(worst, std::abs(v - phi) / std::abs(phi));
    }
    return make_report("", worst, 1e-9, "through step " + std::to_string(k));
  });

  // recurrence
  s.add("recurrence", "cf_vs_ratio", [&] {
    double worst = 0.0;
    for (int k = 0; k <= n; ++k)
      for (Complex l : cfg.grid) {
        const Complex a = convergent_cf(chain, k, l), b = convergent_ratio(chain, k, l);
        worst = std::max(worst, std::abs(a - b) / (1.0 + std::abs(b)));
      }
    return make_report("", worst, 1e-9);
  });
  s.add("recurrence", "np_orthogonality", [&] { return check_np_orthogonality(chain, m, std::min(n, kSpectralCap)); });
  s.add("recurrence", "lead_ratio", [&] {
    const PolyPair pp = build_polys(chain, n);
    double worst = 0.0;
    for (int k = 0; k <= n; ++k) {
      const PencilSection sec = build_section(chain, 0, k);
      CVector e = CVector::Zero(k + 1);
      e(0) = 1.0;
      const double inv = tridiag_solve(sec.J2, e)(0).real();
      worst = std::max(worst, std::abs(pp.Q[k + 1].coeff(k) / pp.P[k + 1].lead() + inv));
    }
    return make_report("", worst, 1e-9, "lead(Q)/lead(P) = -<J2^{-1} e0, e0>");
  });

  // pencil
  s.add("pencil", "mfunction_identity", [&] {
    double worst = 0.0;
    for (int k = 0; k <= n; ++k) {
      const PencilSection sec = build_section(pencil_chain, 0, k);
      for (Complex l : cfg.grid) {
        const Complex r = eval_convergent(chain, k, l);
        worst = std::max(worst, std::abs(m_function(sec, l) - r) / (1.0 + std::abs(r)));
      }
    }
    return make_report("", worst, 1e-9);
  });
  s.add("pencil", "riccati", [&] {
    double worst = 0.0;
    for (int j = 0; j < n; ++j) worst = std::max(worst, riccati_check(pencil_chain, j, n, cfg.grid).value);
    return make_report("", worst, 1e-9, nd);
  });
  const int ns = std::min(n, kSpectralCap);
  std::optional<ZeroReport> zr;
  auto zeros = [&]() -> const ZeroReport& {
    if (!zr) zr = zero_check(pencil_chain, ns, iv);
    return *zr;
  };
  s.add("pencil", "spectrum_in_interval", [&] { return make_report("", zeros().max_outside, 1e-8, "n=" + std::to_string(ns)); });
  s.add("pencil", "spectrum_matches_zeros", [&] {
    return make_report("", zeros().spectrum_mismatch, 1e-7, "n=" + std::to_string(ns));
  });
  s.add("pencil", "interlace_pq", [&] { return flag("", zeros().interlace_q); });
  s.add("pencil", "interlace_consecutive", [&] { return flag("", zeros().interlace_prev, "P_n against P_{n+1}"); });
  s.add("pencil", "resolvent_bounds", [&] {
    const ResolventBounds rb = resolvent_bound_check(pencil_chain, n, cfg.grid, iv);
    return make_report("", std::max({rb.max_inverse_diag - 1.0, rb.max_excess, 0.0}), 1e-10);
  });
  s.add("pencil", "j2_positive_definite", [&] {
    return make_report("", -j2_min_eigenvalue(build_section(pencil_chain, 0, n)), 0.0);
  });
  s.add("pencil", "j2_factorization", [&] {
    const PencilSection sec = build_section(pencil_chain, 0, n);
    const J2Factorization f = j2_factorize(sec);
    return make_report("", std::abs(f.discrepancy - sec.trailing_b * sec.trailing_b), 1e-12,
                       "last-entry discrepancy " + fmt(f.discrepancy));
  });

  // biorth
  // kappa_{N+1} vanishes once the chain has exhausted the support
  const int nb = std::min({n, kBiorthCap, chain.terminated ? avail - 2 : avail - 1});
  std::optional<BiorthSystem> sys;
  std::optional<DenseMatrix> cm;
  auto system = [&]() -> const BiorthSystem& {
    if (!sys) sys = build_system(from_chain(chain, nb));
    return *sys;
  };
  auto moments = [&]() -> const DenseMatrix& {
    if (!cm) cm = moment_table(system().data, m, nb + 1);
    return *cm;
  };
  s.add("biorth", "alpha_r_sum", [&] {
    double worst = 0.0;
    for (int k = 1; k <= nb; ++k) worst = std::max(worst, std::abs(system().data.alpha[k] + system().data.r[k] + 1.0));
    return make_report("", worst, 1e-10);
  });
  s.add("biorth", "kappa_recurrence", [&] {
    double worst = 0.0;
    for (int k = 0; k <= nb; ++k) {
      const Complex q = kappa_by_quadrature(chain, k);
      worst = std::max(worst, std::abs(system().kappa[k] - q) / std::abs(q));
    }
    return make_report("", worst, 1e-6);
  });
  s.add("biorth", "gram_offdiag", [&] {
    return make_report("", check_biorthogonality(system(), gram_from_moments(system(), moments(), nb)).max_offdiag, 1e-7,
                       "N=" + std::to_string(nb));
  });
  s.add("biorth", "gram_diag", [&] {
    return make_report("", check_biorthogonality(system(), gram_from_moments(system(), moments(), nb)).max_diag_rel, 1e-6,
                       "N=" + std::to_string(nb));
  });
  s.add("biorth", "gram_quadrature", [&] {
    const GramReport g = check_biorthogonality(system(), gram_by_quadrature(system(), m, nb));
    return make_report("", std::max(g.max_offdiag / 1e-7, g.max_diag_rel / 1e-6), 1.0, "scaled by the Gram tolerances");
  });
  s.add("biorth", "determinant_route", [&] {
    double worst = 0.0;
    const std::vector<Complex> pts{Complex(3.0, 1.0), Complex(0.5, 2.0), Complex(-0.3, 0.7), Complex(2.0, -1.0),
                                   Complex(-4.0, 0.1)};
    for (int k = 0; k <= nb; ++k) worst = std::max(worst, determinant_route_error(system(), moments(), k, pts));
    return make_report("", worst, 1e-6);
  });
  s.add("biorth", "pp_kap", [&] {
    double worst = 0.0;
    for (int k = 1; k <= nb; ++k) worst = std::max(worst, pp_kap_residual(system(), moments(), k));
    return make_report("", worst, 1e-6);
  });
  s.add("biorth", "rec_st_monicity", [&] {
    double worst = 0.0;
    for (int k = 0; k <= nb; ++k) {
      const NuCoefficients nu = nu_coefficients(system(), k);
      worst = std::max({worst, std::abs(nu.nu1 + nu.nu2 - 1.0), std::abs(nu.nu3 + nu.nu4 - 1.0)});
    }
    return make_report("", worst, 1e-10);
  });
  s.add("biorth", "rec_st_consistency", [&] {
    double worst = 0.0;
    for (int k = 0; k <= nb; ++k) worst = std::max(worst, first_order_residual(system(), k));
    return make_report("", worst, 1e-8);
  });
  s.add("biorth", "r_recurrence", [&] {
    double worst = 0.0;
    for (int k = 1; k <= nb; ++k)
      for (Complex l : cfg.grid)
        for (int which : {1, 2}) worst = std::max(worst, r_recurrence_residual(system(), k, l, which));
    return make_report("", worst, 1e-9);
  });

  // oracle
  s.add("oracle", "oracle_equivalence", [&] {
    double worst = 0.0;
    const int no = std::min(n, kOracleCap);
    for (int k = 0; k <= no; ++k) worst = std::max(worst, oracle_chain_difference(chain, k, cfg.grid));
    return make_report("", worst, 1e-7, "n<=" + std::to_string(no));
  });
  s.add("oracle", "ort_PI", [&] {
    const int nm = std::min(n + 1, kDividedDifferenceCap);
    const PolyPair pp = build_polys(chain, nm - 1);
    const auto sn = conjugate_pair_order(chain.nodes, 2 * nm);
    std::vector<Complex> F;
    for (Complex z : sn) F.push_back(eval_markov(m, z));
    double worst = 0.0;
    for (int k = 1; k <= nm; ++k) worst = std::max(worst, check_ort_PI(pp.P[k], sn, F, k).value);
    return make_report("", worst, 1e-8, "n<=" + std::to_string(nm));
  });
  s.add("oracle", "biort_PI", [&] {
    const int nm = std::min({n, kDividedDifferenceCap, static_cast<int>(chain.nodes.size()) - 1});
    const BiortPIReport b = check_biort_PI(m, chain.nodes, nm);
    return make_report("", std::max(b.max_offdiag, b.route_diff), 1e-6, "N=" + std::to_string(nm));
  });
  return s.out;
}

}  // namespace mpade::cli
