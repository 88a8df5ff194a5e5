// Acceptance run: one line per criterion, nonzero exit if any criterion fails.
#include "uce/cli.hpp"
#include "uce/hochschild.hpp"
#include "uce/verifier.hpp"

#include <fmt/core.h>

#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

using namespace uce;

namespace {

const FieldConfig kQ = FieldConfig::rationals();

struct Timed {
  SuiteInstance instance;
  ExtensionReport report;
  double seconds = 0;
};

std::string label(const ExtensionReport& r) {
  return fmt::format("sl({},{},{})", r.m, r.n, r.algebra);
}

bool passed(const ExtensionReport& r, const std::string& check) {
  const auto* c = r.find(check);
  return c != nullptr && c->pass;
}

// "k/N instances" plus the first few offenders
struct Tally {
  std::size_t good = 0;
  std::size_t total = 0;
  std::vector<std::string> bad;

  void add(bool ok, const std::string& what) {
    ++total;
    if (ok)
      ++good;
    else
      bad.push_back(what);
  }
  bool ok() const { return good == total && total > 0; }
  std::string str(const char* noun = "instances") const {
    std::string s = fmt::format("{}/{} {}", good, total, noun);
    if (!bad.empty()) {
      s += "; failing:";
      for (std::size_t i = 0; i < bad.size() && i < 6; ++i) s += " " + bad[i] + (i + 1 < bad.size() ? "," : "");
      if (bad.size() > 6) s += fmt::format(" and {} more", bad.size() - 6);
    }
    return s;
  }
};

int failures = 0;

void line(int id, const std::string& title, bool ok, const std::string& details) {
  if (!ok) ++failures;
  std::cout << (ok ? "[PASS] " : "[FAIL] ") << "criterion " << id << " (" << title << "): " << details << std::endl;
}

template <class F>
bool no_throw(F&& f, std::string& why) {
  try {
    return f();
  } catch (const std::exception& e) {
    why = e.what();
    return false;
  }
}

std::vector<Timed> run_default_suite() {
  VerifyOptions opts;
  opts.seed = 0;
  opts.samples = 8;
  std::vector<Timed> out;
  for (const auto& inst : default_suite()) {
    const auto t0 = std::chrono::steady_clock::now();
    auto r = verify_instance(inst.m, inst.n, build_family<Rational>(inst.family, kQ), opts);
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    out.push_back({inst, std::move(r), s});
  }
  return out;
}

// Explicit compositions, independent of the checks done at construction.
bool complexes_square_to_zero(const CoeffAlgebra<Rational>& a, bool with_sl, std::string& why) {
  return no_throw(
      [&] {
        for (std::size_t n = 1; n <= 2; ++n)
          if (!hochschild_boundary(a, n).compose(hochschild_boundary(a, n + 1)).is_zero_matrix()) {
            why = fmt::format("Hochschild d_{} d_{} != 0", n, n + 1);
            return false;
          }
        const auto cyc = cyclic_complex(a, 3);
        for (std::size_t n = 1; n <= 2; ++n)
          if (!cyc.complex.boundary(n).compose(cyc.complex.boundary(n + 1)).is_zero_matrix()) {
            why = fmt::format("cyclic d_{} d_{} != 0", n, n + 1);
            return false;
          }
        const auto b0 = connes_B(a, 0);
        const auto b1 = connes_B(a, 1);
        if (!hochschild_boundary(a, 1).compose(b0).is_zero_matrix()) {
          why = "d_1 B != 0";
          return false;
        }
        if (!(b0.compose(hochschild_boundary(a, 1)) + hochschild_boundary(a, 2).compose(b1)).is_zero_matrix()) {
          why = "B d_1 + d_2 B != 0";
          return false;
        }
        if (with_sl) {
          const auto sl = build_sl(GeneralLinear<Rational>(2, 1, a)).algebra;
          const LeibnizOptions uncapped{0};
          const auto d3 = leibniz_boundary_super(sl, 3, uncapped);
          if (!leibniz_boundary_super(sl, 2, uncapped).compose(d3).is_zero_matrix()) {
            why = "Leibniz d_2 d_3 != 0 on sl(2,1,A)";
            return false;
          }
          lie_h2(sl, image(d3));  // asserts the Lie d_2 d_3 = 0
        }
        return true;
      },
      why);
}

std::string cli_report(std::uint64_t seed) {
  const std::string s = std::to_string(seed);
  const char* argv[] = {"uce_lab", "report", "--m", "2", "--n", "1", "--family", "dual_numbers",
                        "--seed", s.c_str(), "--format", "json"};
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(std::size(argv)), argv, out, err);
  return std::to_string(code) + "\n" + out.str();
}

}  // namespace

int main() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto suite = run_default_suite();

  double worst_q = 0, worst_p = 0;
  for (const auto& t : suite) {
    double& w = t.report.characteristic == 0 ? worst_q : worst_p;
    w = std::max(w, t.seconds);
  }

  {
    Tally t;
    for (const auto& s : suite)
      t.add(passed(s.report, "ker_psi=hh1"),
            fmt::format("{} {} vs {}", label(s.report), s.report.ker_psi, s.report.hh1));
    line(1, "dim Ker psi = dim HH_1", t.ok(),
         t.str() + fmt::format("; slowest {:.1f} s over Q, {:.1f} s over F_32003", worst_q, worst_p));
  }
  {
    Tally t;
    for (const auto& s : suite)
      t.add(passed(s.report, "ker_phi=hc1"),
            fmt::format("{} {} vs {}", label(s.report), s.report.ker_phi, s.report.hc1));
    line(2, "dim Ker phi = dim HC_1", t.ok(), t.str());
  }
  {
    Tally t;
    for (const auto& s : suite)
      t.add(passed(s.report, "ker_pi=im_B") && passed(s.report, "ker_pi=hh1-hc1"),
            fmt::format("{} ker_pi {} im_B {} hh1 {} hc1 {}", label(s.report), s.report.ker_pi, s.report.im_B,
                        s.report.hh1, s.report.hc1));
    line(3, "dim Ker pi = dim Im B = dim HH_1 - dim HC_1", t.ok(), t.str());
  }
  {
    Tally t;
    for (const auto& s : suite)
      if (s.report.omega1) t.add(passed(s.report, "hh1=omega1"), label(s.report));
    const auto dual = kahler_differentials(build_family<Rational>("dual_numbers", kQ)).dim;
    const auto hh = hochschild_homology(build_family<Rational>("dual_numbers", kQ), 1).dim;
    t.add(dual == 1 && hh == 1, fmt::format("dual numbers {} vs {}", hh, dual));
    line(4, "dim HH_1 = dim Omega^1 for commutative A", t.ok(), t.str("comparisons"));
  }
  {
    Tally t;
    for (const auto& s : suite) {
      bool ok = true;
      for (const char* c : {"hochschild_dd=0", "cyclic_dd=0", "connes_Bd+dB=0", "leibniz_d2d3=0", "lie_d2d3=0(st)"})
        ok = ok && passed(s.report, c);
      std::string why;
      ok = ok && complexes_square_to_zero(build_family<Rational>(s.instance.family, kQ), false, why);
      t.add(ok, label(s.report));
    }
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      const auto a = random_algebra<Rational>(kQ, seed, 4);
      std::string why;
      const bool ok = validate(a).empty() && complexes_square_to_zero(a, true, why);
      t.add(ok, fmt::format("random seed {} ({})", seed, why));
    }
    line(5, "d d = 0 and B d + d B = 0", t.ok(), t.str("algebras"));
  }
  {
    Tally t;
    for (const auto& s : suite) {
      std::string bad;
      for (const char* c : {"steinberg_relations", "h_identities", "phq_direct_sum", "ker_psi_in_H", "centrality",
                            "stl_perfect", "stl_leibniz", "tau_identity"})
        if (!passed(s.report, c)) bad += std::string(bad.empty() ? "" : "+") + c;
      t.add(bad.empty(), label(s.report) + " " + bad);
    }
    line(6, "presentation, decomposition, centrality, perfectness", t.ok(), t.str());
  }
  {
    Tally t;
    for (const auto& s : suite) {
      const auto* c = s.report.find("universality");
      t.add(c != nullptr && c->pass && c->details.rfind("8/8 lifts, homogeneous dim 0", 0) == 0,
            label(s.report) + (c ? " " + c->details : ""));
    }
    line(7, "universality over 8 sampled cocycle extensions", t.ok(), t.str());
  }
  {
    Tally t;
    const auto refused = [](const std::function<void()>& f) {
      try {
        f();
      } catch (const FieldError&) {
        return true;
      } catch (const AlgebraError&) {
        return true;
      }
      return false;
    };
    t.add(refused([] { characteristic_guard(2, 1, FieldConfig::prime(3)); }), "(2,1) over F_3 accepted");
    t.add(refused([] { characteristic_guard(2, 2, FieldConfig::prime(2)); }), "(2,2) over F_2 accepted");
    t.add(refused([] { build_family<ModP>("ground_field", FieldConfig::prime(3)); }), "F_3 field accepted");
    for (const auto& [m, n, p, fam] : std::vector<std::tuple<int, int, std::uint32_t, const char*>>{
             {2, 1, 3, "ground_field"}, {2, 2, 2, "ground_field"}, {2, 2, 2, "dual_numbers"}}) {
      std::string why;
      const bool ok = no_throw(
          [&, m = m, n = n, p = p, fam = fam] {
            VerifyOptions o;
            o.samples = 2;
            const auto r = verify_instance(m, n, build_family<ModP>(fam, FieldConfig::prime(p, true)), o);
            return !r.checks.empty() && !r.banners.empty() && r.banners[0].rfind("hypothesis violated", 0) == 0;
          },
          why);
      t.add(ok, fmt::format("({},{},{}) over F_{} with override: {}", m, n, fam, p, why));
    }
    const char* refuse[] = {"uce_lab", "ext", "verify-theorems", "--m", "2", "--n", "1", "--char", "3"};
    const char* allow[] = {"uce_lab", "ext", "verify-theorems", "--m", "2", "--n", "1", "--char", "3",
                           "--override-char-guard", "--samples", "1"};
    std::ostringstream o1, e1, o2, e2;
    const int c1 = run_cli(static_cast<int>(std::size(refuse)), refuse, o1, e1);
    const int c2 = run_cli(static_cast<int>(std::size(allow)), allow, o2, e2);
    t.add(c1 == kExitConfigError, fmt::format("CLI refusal exit {}", c1));
    t.add((c2 == kExitPass || c2 == kExitMathFailure) && o2.str().find("hypothesis violated") != std::string::npos,
          fmt::format("CLI override exit {}", c2));
    line(8, "characteristic guards", t.ok(), t.str("guard cases"));
  }
  {
    Tally t;
    for (const auto& s : suite)
      if (s.report.m == 2 && s.report.n == 1)
        t.add(s.report.characteristic == 0 && passed(s.report, "ad_diagonalizable"),
              label(s.report) + (s.report.find("ad_diagonalizable") ? " " + s.report.find("ad_diagonalizable")->details
                                                                    : " missing"));
    line(9, "ad(v_12(1) + v_21(1)) has eigenvalues +1 and -1 on M", t.ok(), t.str());
  }
  {
    Tally t;
    std::vector<ExtensionReport> first;
    for (const auto& s : suite) first.push_back(s.report);
    std::vector<ExtensionReport> second;
    for (const auto& s : run_default_suite()) second.push_back(s.report);
    t.add(to_json(first).dump(2) == to_json(second).dump(2), "suite JSON");
    t.add(to_text(first) == to_text(second), "suite text");
    t.add(cli_report(7) == cli_report(7), "CLI report");
    line(10, "byte-identical reports for identical configuration", t.ok(), t.str("comparisons"));
  }

  const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::cout << fmt::format("{}/10 criteria pass ({:.1f} s)", 10 - failures, total) << std::endl;
  return failures == 0 ? 0 : 1;
}
