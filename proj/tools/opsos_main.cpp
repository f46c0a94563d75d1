// opsos: exact verification toolkit for sum-of-squares analyses of the
// ordering principle. Subcommands run parameter scans and verification
// suites; all numeric output is exact ("p/q") or outward-rounded.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "opsos/certifier.hpp"
#include "opsos/combinatorics.hpp"
#include "opsos/laguerre.hpp"
#include "opsos/omega.hpp"
#include "opsos/ordering_pe.hpp"
#include "opsos/quadrature.hpp"
#include "opsos/verify.hpp"
#include "opsos/witness.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerificationFailure = 1;
constexpr int kExitInvalidInput = 2;

struct Output {
  std::string path;  // empty = stdout
  std::ostringstream buf;

  int flush() {
    if (path.empty()) {
      std::cout << buf.str();
      return kExitOk;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) {
      std::cerr << "error: cannot write " << path << "\n";
      return kExitInvalidInput;
    }
    f << buf.str();
    return kExitOk;
  }
};

// Chunked parallel map with a fixed worker count; results keep input order.
template <typename Fn>
void parallel_for(long count, int workers, Fn fn) {
  if (workers <= 1 || count <= 1) {
    for (long i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  std::atomic<long> next{0};
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (long i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
    });
  for (auto& t : pool) t.join();
}

void config_header(Output& out, const std::string& command,
                   const std::vector<std::pair<std::string, std::string>>& kv) {
  out.buf << "# opsos " << command << "\n";
  for (const auto& [k, v] : kv) out.buf << "# " << k << "=" << v << "\n";
}

int run_pe_eval(int n, const std::string& monomial, Output& out) {
  opsos::PEContext ctx(n);
  opsos::IndexMonomial m = opsos::IndexMonomial::parse(monomial);
  out.buf << opsos::to_string(ctx.eval(m)) << "\n";
  return out.flush();
}

int run_pe_psd(int n, int d, Output& out, const std::string& format) {
  opsos::PEContext ctx(n);
  opsos::SymMatrix mm = ctx.moment_matrix(d);
  opsos::PsdResult res = opsos::ldl_status(mm);
  if (format == "json") {
    out.buf << "{\"config\":{\"n\":" << n << ",\"d\":" << d << "},"
            << "\"basis_size\":" << mm.dim() << ",\"psd\":" << (res.psd ? "true" : "false");
    if (!res.psd) {
      out.buf << ",\"witness\":[";
      for (size_t i = 0; i < res.witness.size(); ++i)
        out.buf << (i ? "," : "") << '"' << opsos::to_string(res.witness[i]) << '"';
      out.buf << "],\"witness_value\":\"" << opsos::to_string(res.witness_value) << "\"";
    }
    out.buf << "}\n";
  } else {
    config_header(out, "pe-psd", {{"n", std::to_string(n)}, {"d", std::to_string(d)}});
    out.buf << "n,d,basis_size,psd\n"
            << n << "," << d << "," << mm.dim() << "," << (res.psd ? "PSD" : "NotPSD")
            << "\n";
  }
  return out.flush();
}

int run_witness(int n_min, int n_max, int workers, Output& out) {
  config_header(out, "witness",
                {{"n_min", std::to_string(n_min)}, {"n_max", std::to_string(n_max)}});
  out.buf << "n,m_star,paper_bound,chebyshev_value,elapsed_ms\n";
  struct Row {
    int n, m_star, bound;
    std::string value;
    long elapsed;
  };
  std::vector<Row> rows(static_cast<size_t>(n_max - n_min + 1));
  parallel_for(n_max - n_min + 1, workers, [&](long i) {
    int n = n_min + static_cast<int>(i);
    auto t0 = std::chrono::steady_clock::now();
    int bound = opsos::witness_degree_bound(n);
    auto fd = opsos::minimal_failing_degree(n, bound);
    opsos::WitnessResult wr = opsos::chebyshev_witness(n);
    auto t1 = std::chrono::steady_clock::now();
    rows[static_cast<size_t>(i)] =
        Row{n, fd ? fd->m_star : -1, bound, opsos::to_string(wr.value),
            std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count()};
  });
  for (const auto& r : rows)
    out.buf << r.n << "," << r.m_star << "," << r.bound << "," << r.value << ","
            << r.elapsed << "\n";
  return out.flush();
}

int run_omega_scan(long n_min, long n_max, int d2, int d_max, int t, int workers,
                   Output& out) {
  config_header(out, "omega-scan",
                {{"n_min", std::to_string(n_min)},
                 {"n_max", std::to_string(n_max)},
                 {"d2", std::to_string(d2)},
                 {"d_max", std::to_string(d_max)},
                 {"t", std::to_string(t)}});
  out.buf << "n,d2,first_failure_d,certified_d,paper_upper_curve\n";
  struct Row {
    long n;
    int ff, cert, curve;
  };
  std::vector<Row> rows(static_cast<size_t>(n_max - n_min + 1));
  parallel_for(n_max - n_min + 1, workers, [&](long i) {
    long n = n_min + i;
    int ff = -1;
    if (d2 <= n) {
      auto f = opsos::omega_first_failure(n, d2, d_max);
      ff = f ? *f : -1;
    }
    int cert = n >= 16 ? opsos::certified_lower_bound(n, t) : 0;
    int curve = opsos::witness_degree_bound(static_cast<int>(2 * n));
    rows[static_cast<size_t>(i)] = Row{n, ff, cert, curve};
  });
  for (const auto& r : rows)
    out.buf << r.n << "," << r.d2 << "," << (r.ff >= 0 ? std::to_string(r.ff) : "") << ","
            << r.cert << "," << r.curve << "\n";
  (void)d2;
  return out.flush();
}

int run_laguerre_verify(int k_max, bool export_basis, Output& out) {
  if (export_basis) {
    out.buf << "[";
    for (int k = 0; k <= k_max; ++k) {
      opsos::HBasisElement h = opsos::h_poly(k);
      out.buf << (k ? "," : "") << "{\"k\":" << k << ",\"coefficients\":[";
      for (int i = 0; i <= h.P.degree(); ++i)
        out.buf << (i ? "," : "") << '"' << opsos::to_string(h.P.coeff(i)) << '"';
      out.buf << "],\"normalizer\":\"" << opsos::to_string(h.norm_square()) << "\"}";
    }
    out.buf << "]\n";
    return out.flush();
  }
  long failures = 0, checks = 0;
  for (int j = 0; j <= k_max; ++j)
    for (int k = j; k <= k_max; ++k) {
      opsos::Rational ip =
          opsos::weighted_inner_product(opsos::h_poly(j).P, opsos::h_poly(k).P);
      opsos::Rational expect =
          (j == k) ? opsos::h_poly(k).norm_square() : opsos::Rational(0);
      ++checks;
      if (ip != expect) ++failures;
    }
  config_header(out, "laguerre-verify", {{"k_max", std::to_string(k_max)}});
  out.buf << "checks,failures\n" << checks << "," << failures << "\n";
  int rc = out.flush();
  if (rc != kExitOk) return rc;
  return failures == 0 ? kExitOk : kExitVerificationFailure;
}

int run_quad_test(int t, int d, const std::string& delta_str, Output& out) {
  opsos::Rational delta = opsos::rational_from_string(delta_str);
  opsos::ErrorBoundConstants consts = opsos::error_bound_constants(t);
  opsos::Interval bound = opsos::integration_error_bound(t, d, delta);
  opsos::RatPoly g = opsos::h_poly(d).P;
  opsos::Rational ig = opsos::weighted_inner_product(g, g);
  opsos::DiscreteSum s =
      opsos::weighted_discrete_sum(g, delta, opsos::default_k_max(d, delta));
  opsos::Interval diff = (s.value + s.tail) - opsos::Interval::exact(ig);
  opsos::Interval budget = bound * opsos::Interval::exact(ig);
  bool pass = diff.abs().definitely_le(budget);
  out.buf << "{\"config\":{\"t\":" << t << ",\"d\":" << d << ",\"delta\":\""
          << opsos::to_string(delta) << "\"},\"constants\":" << consts.trace_json()
          << ",\"bound_normalized\":[\"" << bound.lo_str() << "\",\"" << bound.hi_str()
          << "\"],\"measured_abs_diff_upper\":\"" << diff.abs().hi_str()
          << "\",\"budget_lower\":\"" << budget.lo_str()
          << "\",\"pass\":" << (pass ? "true" : "false") << "}\n";
  int rc = out.flush();
  if (rc != kExitOk) return rc;
  return pass ? kExitOk : kExitVerificationFailure;
}

int run_certify(long n, int t, int d, int d2, bool scan_csv, const std::string& n_list,
                int workers, Output& out) {
  if (!n_list.empty() || scan_csv) {
    std::vector<long> ns;
    if (!n_list.empty()) {
      std::stringstream ss(n_list);
      std::string tok;
      while (std::getline(ss, tok, ',')) ns.push_back(std::stol(tok));
    } else {
      ns.push_back(n);
    }
    config_header(out, "certify", {{"t", std::to_string(t)}});
    out.buf << "n,element_count,certified_d,certified_g_degree\n";
    std::vector<std::string> rows(ns.size());
    parallel_for(static_cast<long>(ns.size()), workers, [&](long i) {
      long nn = ns[static_cast<size_t>(i)];
      int best = nn >= 16 ? opsos::certified_lower_bound(nn, t) : 0;
      std::ostringstream os;
      os << nn << "," << 2 * nn << "," << best << "," << best / 2 << "\n";
      rows[static_cast<size_t>(i)] = os.str();
    });
    for (const auto& r : rows) out.buf << r;
    return out.flush();
  }
  if (d > 0) {
    int use_d2 = d2;
    if (use_d2 <= 0) {
      auto found = opsos::find_d2(d, n);
      if (!found) {
        out.buf << "{\"n\":" << n << ",\"d\":" << d
                << ",\"error\":\"no feasible d2\",\"certified\":false}\n";
        return out.flush();
      }
      use_d2 = *found;
    }
    out.buf << opsos::check_conditions(n, d, use_d2, t).to_json() << "\n";
    return out.flush();
  }
  // No d given: report the best certified degree with its witness report.
  int best = opsos::certified_lower_bound(n, t);
  if (best == 0) {
    out.buf << "{\"n\":" << n << ",\"t\":" << t
            << ",\"certified_d\":0,\"certified\":false}\n";
    return out.flush();
  }
  auto found = opsos::find_d2(best, n);
  out.buf << opsos::check_conditions(n, best, *found, t).to_json() << "\n";
  return out.flush();
}

int run_verify_all(Output& out) {
  bool ok = true;
  for (const auto& name : opsos::verify::suite_names()) {
    opsos::verify::SuiteResult r = opsos::verify::run_suite(name);
    out.buf << "suite " << r.name << ": " << (r.failures == 0 ? "ok" : "FAILED") << " ("
            << r.checks << " checks, " << r.failures << " failures)\n";
    for (const auto& m : r.messages) out.buf << "  - " << m << "\n";
    if (r.failures != 0) {
      ok = false;
      break;  // fail on the first violated suite
    }
  }
  int rc = out.flush();
  if (rc != kExitOk) return rc;
  return ok ? kExitOk : kExitVerificationFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact toolkit for ordering-principle sum-of-squares analyses"};
  app.require_subcommand(1);

  std::string output_path;
  std::string format = "csv";
  int workers = 1;
  app.add_option("--output", output_path, "write results to this path (default stdout)");
  app.add_option("--format", format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--parallelism", workers, "worker count for scans")
      ->check(CLI::Range(1, 256));

  auto* pe_eval = app.add_subcommand("pe-eval", "evaluate the pseudo-expectation");
  int pe_n = 0;
  std::string monomial;
  pe_eval->add_option("--n", pe_n, "element count (>= 2)")->required();
  pe_eval->add_option("--monomial", monomial, "e.g. \"x(1,2)*x(2,3)*z(1)^2\"")->required();

  auto* pe_psd = app.add_subcommand("pe-psd", "moment-matrix PSD status");
  int psd_n = 4, psd_d = 2;
  pe_psd->add_option("--n", psd_n, "element count (<= 7)")->required();
  pe_psd->add_option("--d", psd_d, "moment degree (even, <= 4)");

  auto* witness = app.add_subcommand("witness", "failing-degree scan and witness values");
  int w_n = 0, w_n_min = 0, w_n_max = 0;
  witness->add_option("--n", w_n, "single n");
  witness->add_option("--n-min", w_n_min, "scan start");
  witness->add_option("--n-max", w_n_max, "scan end");

  auto* omega = app.add_subcommand("omega-scan", "signed-form first failures");
  long o_n_min = 0, o_n_max = 0;
  int o_d2 = 2, o_d_max = 3, o_t = 2;
  omega->add_option("--n-min", o_n_min)->required();
  omega->add_option("--n-max", o_n_max)->required();
  omega->add_option("--d2", o_d2, "distinguished count");
  omega->add_option("--d-max", o_d_max, "scan ceiling");
  omega->add_option("--t", o_t, "quadrature order for the certified join");

  auto* lag = app.add_subcommand("laguerre-verify", "orthonormal basis checks/export");
  int l_k_max = 25;
  bool l_export = false;
  lag->add_option("--k-max", l_k_max);
  lag->add_flag("--export-basis", l_export, "emit the basis as JSON");

  auto* quad = app.add_subcommand("quad-test", "error-bound constants and validation");
  int q_t = 1, q_d = 2;
  std::string q_delta = "1/100";
  quad->add_option("--t", q_t)->check(CLI::Range(1, 6));
  quad->add_option("--d", q_d);
  quad->add_option("--delta", q_delta, "rational step, e.g. 1/100");

  auto* cert = app.add_subcommand("certify", "lower-bound condition checks");
  long c_n = 0;
  int c_t = 2, c_d = 0, c_d2 = 0;
  bool c_scan = false;
  std::string c_n_list;
  cert->add_option("--n", c_n, "distribution parameter (element count is 2n)");
  cert->add_option("--t", c_t, "quadrature order")->check(CLI::Range(1, 6));
  cert->add_option("--d", c_d, "check this degree (otherwise scan)");
  cert->add_option("--d2", c_d2, "distinguished count (otherwise minimal feasible)");
  cert->add_flag("--csv", c_scan, "emit the CSV summary instead of JSON");
  cert->add_option("--n-list", c_n_list, "comma-separated n values for the CSV summary");

  auto* verify = app.add_subcommand("verify-all", "run every module invariant suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitInvalidInput;
  }

  Output out;
  out.path = output_path;
  try {
    if (*pe_eval) return run_pe_eval(pe_n, monomial, out);
    if (*pe_psd) return run_pe_psd(psd_n, psd_d, out, format);
    if (*witness) {
      if (w_n > 0) return run_witness(w_n, w_n, workers, out);
      if (w_n_min >= 4 && w_n_max >= w_n_min)
        return run_witness(w_n_min, w_n_max, workers, out);
      std::cerr << "error: provide --n or --n-min/--n-max (n >= 4)\n";
      return kExitInvalidInput;
    }
    if (*omega) return run_omega_scan(o_n_min, o_n_max, o_d2, o_d_max, o_t, workers, out);
    if (*lag) return run_laguerre_verify(l_k_max, l_export, out);
    if (*quad) return run_quad_test(q_t, q_d, q_delta, out);
    if (*cert) {
      if (c_n <= 0 && c_n_list.empty()) {
        std::cerr << "error: provide --n or --n-list\n";
        return kExitInvalidInput;
      }
      return run_certify(c_n, c_t, c_d, c_d2, c_scan, c_n_list, workers, out);
    }
    if (*verify) return run_verify_all(out);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const opsos::budget_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitVerificationFailure;
  }
  return kExitOk;
}
