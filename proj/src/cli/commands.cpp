#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "mpade/biorth.hpp"
#include "mpade/cli.hpp"
#include "mpade/error.hpp"
#include "mpade/oracle.hpp"
#include "mpade/pencil.hpp"
#include "mpade/recurrence.hpp"

namespace mpade::cli {

using nlohmann::json;

namespace {

std::string brief(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

// adding 0.0 turns -0.0 into 0.0
json cjson(Complex z) { return json::array({z.real() + 0.0, z.imag() + 0.0}); }

json real_list(const std::vector<Complex>& v) {
  json a = json::array();
  for (Complex z : v) a.push_back(z.real() + 0.0);
  return a;
}

json complex_list(const std::vector<Complex>& v) {
  json a = json::array();
  for (Complex z : v) a.push_back(cjson(z));
  return a;
}

json matrix_json(const DenseMatrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json r = json::array();
    for (int k = 0; k < m.cols(); ++k) r.push_back(cjson(m(i, k)));
    rows.push_back(r);
  }
  return rows;
}

std::string path_in(const Options& opt, const std::string& name) {
  return (std::filesystem::path(opt.out_dir) / name).string();
}

/// Chain long enough for R_0..R_{n_max}.
SchurChain convergent_chain(const ExperimentConfig& cfg) {
  const int steps = std::min<int>(cfg.n_max + 1, cfg.nodes.size());
  return run_chain(cfg.measure, cfg.nodes, steps, cfg.eps_degenerate);
}

int usable_n(const ExperimentConfig& cfg, const SchurChain& chain) {
  const int n = std::min(cfg.n_max, static_cast<int>(chain.coefficients().size()) - 1);
  if (n < cfg.n_max)
    std::cerr << "note: chain " << (chain.terminated ? "terminated" : "ended") << " after "
              << chain.coefficients().size() << " records; results up to n=" << n << "\n";
  return n;
}

}  // namespace

json chain_json(const SchurChain& chain) {
  json steps = json::array();
  for (const SchurStep& s : chain.coefficients())
    steps.push_back({{"z", cjson(s.z)}, {"a1", s.a1}, {"a2", s.a2}, {"b", s.b}});
  return {{"steps", steps}, {"terminated", chain.terminated}, {"eps_degenerate", chain.eps_degenerate}};
}

int cmd_approx(const ExperimentConfig& cfg, const Options& opt) {
  if (static_cast<int>(cfg.nodes.size()) < cfg.n_max) throw ConfigError("nodes", "fewer nodes than n_max");
  const SchurChain chain = run_chain(cfg.measure, cfg.nodes, cfg.n_max, cfg.eps_degenerate);
  json out = chain_json(chain);
  const auto coeffs = chain.coefficients();
  json P = json::array(), Q = json::array();
  if (!coeffs.empty()) {
    const PolyPair pp = build_polys(chain, static_cast<int>(coeffs.size()) - 1);
    for (const auto& p : pp.P) P.push_back(real_list(p.coeffs()));
    for (const auto& q : pp.Q) Q.push_back(real_list(q.coeffs()));
  }
  out["polys"] = {{"P", P}, {"Q", Q}};
  std::ostringstream csv;
  csv << "j,re_z,im_z,a1,a2,b\n";
  for (std::size_t j = 0; j < coeffs.size(); ++j)
    csv << j << ',' << fmt(coeffs[j].z.real()) << ',' << fmt(coeffs[j].z.imag()) << ',' << fmt(coeffs[j].a1) << ','
        << fmt(coeffs[j].a2) << ',' << fmt(coeffs[j].b) << '\n';
  write_atomic(path_in(opt, "chain.json"), out.dump(2) + "\n");
  write_atomic(path_in(opt, "coefficients.csv"), csv.str());
  std::cout << coeffs.size() << " coefficient records" << (chain.terminated ? ", terminated" : "") << "\n";
  return chain.terminated ? kDegenerate : kOk;
}

int cmd_converge(const ExperimentConfig& cfg, const Options& opt) {
  const SchurChain chain = convergent_chain(cfg);
  const int n_top = usable_n(cfg, chain);
  const Interval iv = chain.measure.interval();
  std::ostringstream csv;
  csv << "n,re_lambda,im_lambda,abs_error,bound,ms\n";
  for (int n = 1; n <= n_top; ++n)
    for (Complex l : cfg.grid) {
      const auto t0 = std::chrono::steady_clock::now();
      const double err = std::abs(eval_convergent(chain, n, l) - eval_markov(chain.measure, l));
      const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
      csv << n << ',' << fmt(l.real()) << ',' << fmt(l.imag()) << ',' << fmt(err) << ',' << fmt(1.0 / iv.dist(l)) << ','
          << fmt(ms) << '\n';
    }
  write_atomic(path_in(opt, "converge.csv"), csv.str());
  if (opt.oracle) {
    std::ostringstream oc;
    oc << "n,re_lambda,im_lambda,re_R,im_R,re_oracle,im_oracle,abs_diff\n";
    for (int n = 0; n <= n_top; ++n) {
      RationalFunction r;
      try {
        r = newton_pade_solve(make_problem(chain.measure, chain.nodes, n));
      } catch (const Error& e) {
        std::cerr << "oracle skipped at n=" << n << ": " << e.what() << "\n";
        continue;
      }
      for (Complex l : cfg.grid) {
        const Complex a = eval_convergent(chain, n, l), b = r(l);
        oc << n << ',' << fmt(l.real()) << ',' << fmt(l.imag()) << ',' << fmt(a.real()) << ',' << fmt(a.imag()) << ','
           << fmt(b.real()) << ',' << fmt(b.imag()) << ',' << fmt(std::abs(a - b)) << '\n';
      }
    }
    write_atomic(path_in(opt, "oracle.csv"), oc.str());
  }
  std::cout << "converge: n=1.." << n_top << " over " << cfg.grid.size() << " probes\n";
  return kOk;
}

int cmd_check(const ExperimentConfig& cfg, const Options& opt) {
  const auto entries = run_checks(cfg, opt.only);
  json checks = json::array();
  bool all = true;
  for (const auto& e : entries) {
    all = all && e.report.pass;
    checks.push_back({{"module", e.module},
                      {"name", e.report.name},
                      {"value", e.report.value},
                      {"tol", e.report.tol},
                      {"pass", e.report.pass},
                      {"detail", e.report.detail}});
    std::cout << (e.report.pass ? "[PASS] " : "[FAIL] ") << e.module << '/' << e.report.name << " value=" << brief(e.report.value)
              << " tol=" << brief(e.report.tol) << (e.report.detail.empty() ? "" : " (" + e.report.detail + ")") << "\n";
  }
  write_atomic(path_in(opt, "check.json"), json{{"checks", checks}, {"all_pass", all}}.dump(2) + "\n");
  std::cout << (all ? "all checks passed" : "some checks failed") << " (" << entries.size() << ")\n";
  return all ? kOk : kCheckFailure;
}

int cmd_pencil(const ExperimentConfig& cfg, const Options& opt) {
  const SchurChain chain = convergent_chain(cfg);
  const int n = usable_n(cfg, chain);
  if (n < 0) throw Error(Errc::ChainTooShort, "no coefficients for a pencil section");
  const PencilSection s = build_section(chain, 0, n);
  const auto eig = gevp_spectrum(s);
  const J2Factorization f = j2_factorize(s);
  const double j2min = j2_min_eigenvalue(s);
  json out = {{"lo", s.lo},
              {"hi", s.hi},
              {"diag1", real_list(s.J1.diag)},
              {"off1_sub", complex_list(s.J1.sub)},
              {"off1_sup", complex_list(s.J1.sup)},
              {"diag2", real_list(s.J2.diag)},
              {"off2", real_list(s.J2.sub)},
              {"trailing_b", s.trailing_b},
              {"eigenvalues", eig},
              {"j2_min_eigenvalue", j2min},
              {"factorization", {{"last_diagonal_discrepancy", f.discrepancy}, {"expected", s.trailing_b * s.trailing_b}}}};
  write_atomic(path_in(opt, "pencil.json"), out.dump(2) + "\n");
  std::cout << "pencil [0," << n << "]: " << eig.size() << " eigenvalues in [" << fmt(eig.front()) << ", "
            << fmt(eig.back()) << "], J2 min eigenvalue " << fmt(j2min) << "\n";
  return kOk;
}

int cmd_biorth(const ExperimentConfig& cfg, const Options& opt) {
  const SchurChain chain = convergent_chain(cfg);
  const int N = std::min(usable_n(cfg, chain), static_cast<int>(chain.coefficients().size()) - (chain.terminated ? 2 : 1));
  if (N < 0) throw Error(Errc::ChainTooShort, "no coefficients for the biorthogonal system");
  const R2Data d = from_chain(chain, N);
  const BiorthSystem sys = build_system(d);
  const DenseMatrix c = moment_table(d, chain.measure, N);
  const DenseMatrix G = gram_from_moments(sys, c, N);
  const GramReport g = check_biorthogonality(sys, G);
  const GramReport gq = check_biorthogonality(sys, gram_by_quadrature(sys, chain.measure, N));
  json nu = json::array();
  for (int n = 0; n <= N; ++n) {
    const NuCoefficients v = nu_coefficients(sys, n);
    nu.push_back({{"n", n}, {"nu1", cjson(v.nu1)}, {"nu2", cjson(v.nu2)}, {"nu3", cjson(v.nu3)}, {"nu4", cjson(v.nu4)}});
  }
  json out = {{"N", N},
              {"conventions", {{"a0", cjson(d.a[0])}, {"b0", cjson(d.b[0])}, {"r0", cjson(d.r[0])}}},
              {"kappa", complex_list(sys.kappa)},
              {"xi", complex_list(sys.xi)},
              {"h", complex_list(sys.h)},
              {"gram", matrix_json(G)},
              {"gram_offdiag_rel", g.max_offdiag},
              {"gram_diag_rel", g.max_diag_rel},
              {"gram_quadrature_offdiag_rel", gq.max_offdiag},
              {"gram_quadrature_diag_rel", gq.max_diag_rel},
              {"pass", g.pass},
              {"nu", nu}};
  std::ostringstream csv;
  csv << "n,m,re,im,abs\n";
  for (int i = 0; i <= N; ++i)
    for (int k = 0; k <= N; ++k)
      csv << i << ',' << k << ',' << fmt(G(i, k).real()) << ',' << fmt(G(i, k).imag()) << ',' << fmt(std::abs(G(i, k))) << '\n';
  write_atomic(path_in(opt, "biorth.json"), out.dump(2) + "\n");
  write_atomic(path_in(opt, "gram.csv"), csv.str());
  std::cout << "biorth N=" << N << ": offdiag " << fmt(g.max_offdiag) << ", diag " << fmt(g.max_diag_rel)
            << (g.pass ? " pass" : " FAIL") << "\n";
  return g.pass ? kOk : kCheckFailure;
}

int cmd_oracle(const ExperimentConfig& cfg, const Options& opt) {
  const SchurChain chain = convergent_chain(cfg);
  const int n_top = usable_n(cfg, chain);
  std::ostringstream csv;
  csv << "n,re_lambda,im_lambda,re_R,im_R,re_oracle,im_oracle,abs_diff\n";
  json rows = json::array();
  double worst = 0.0;
  for (int n = 0; n <= n_top; ++n) {
    const PadeSolution p = newton_pade_detail(make_problem(chain.measure, chain.nodes, n));
    double wn = 0.0;
    for (Complex l : cfg.grid) {
      const Complex a = eval_convergent(chain, n, l), b = p.r(l);
      wn = std::max(wn, std::abs(a - b));
      csv << n << ',' << fmt(l.real()) << ',' << fmt(l.imag()) << ',' << fmt(a.real()) << ',' << fmt(a.imag()) << ','
          << fmt(b.real()) << ',' << fmt(b.imag()) << ',' << fmt(std::abs(a - b)) << '\n';
    }
    rows.push_back({{"n", n}, {"max_diff", wn}, {"rank_gap", p.rank_gap}});
    worst = std::max(worst, wn);
  }
  const bool pass = worst <= 1e-7;
  write_atomic(path_in(opt, "oracle.csv"), csv.str());
  write_atomic(path_in(opt, "oracle.json"), json{{"rows", rows}, {"max_diff", worst}, {"pass", pass}}.dump(2) + "\n");
  std::cout << "oracle n=0.." << n_top << ": max diff " << fmt(worst) << (pass ? " pass" : " FAIL") << "\n";
  return pass ? kOk : kCheckFailure;
}

int run(int argc, char** argv) {
  CLI::App app{"Multipoint Pade approximants to Markov functions"};
  app.require_subcommand(1);
  Options opt;
  app.add_option("--config", opt.config_path, "experiment JSON")->required();
  app.add_option("--out", opt.out_dir, "output directory");
  app.add_option("--seed", opt.seed, "seed for randomized checks");
  app.add_option("--tol", opt.tol, "degeneracy cutoff for b^2");
  app.add_option("--only", opt.only, "restrict check to one module: schur, recurrence, pencil, biorth, oracle");
  app.footer(
      "Node patterns: vertical z_k = base (1 + k spacing) i; arc z_k = c + base exp(i pi (k + 1/2) / count);\n"
      "strip z_k = x_k + base i over Chebyshev points x_k, alternating ends.\n"
      "Exit codes: 0 ok, 1 config error, 2 chain terminated, 3 numeric failure, 4 check failure.");
  app.fallthrough();
  auto* approx = app.add_subcommand("approx", "chain coefficients and P, Q polynomials");
  auto* converge = app.add_subcommand("converge", "error table |R_n - phi| over the grid");
  converge->add_flag("--oracle", opt.oracle, "also compare with the interpolation oracle");
  auto* check = app.add_subcommand("check", "invariant suite");
  auto* pencil = app.add_subcommand("pencil", "pencil section, spectrum and factorization");
  auto* biorth = app.add_subcommand("biorth", "biorthogonal system and Gram report");
  auto* oracle = app.add_subcommand("oracle", "interpolation oracle cross-validation");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }
  try {
    ExperimentConfig cfg = load_config(opt.config_path);
    apply_overrides(cfg, opt);
    if (*approx) return cmd_approx(cfg, opt);
    if (*converge) return cmd_converge(cfg, opt);
    if (*check) return cmd_check(cfg, opt);
    if (*pencil) return cmd_pencil(cfg, opt);
    if (*biorth) return cmd_biorth(cfg, opt);
    if (*oracle) return cmd_oracle(cfg, opt);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == Errc::DegenerateStep ? kDegenerate : kNumericFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNumericFailure;
  }
  return kConfigError;
}

}  // namespace mpade::cli
