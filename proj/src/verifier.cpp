#include "uce/verifier.hpp"

#include "uce/cocycles.hpp"
#include "uce/steinberg.hpp"

#include <fmt/format.h>

#include <functional>
#include <random>

namespace uce {

bool ExtensionReport::all_pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

const CheckResult* ExtensionReport::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

void ExtensionReport::add(std::string name, bool pass, std::string details) {
  checks.push_back(CheckResult{std::move(name), pass, std::move(details)});
}

nlohmann::ordered_json to_json(const ExtensionReport& r) {
  nlohmann::ordered_json j;
  j["m"] = r.m;
  j["n"] = r.n;
  j["algebra"] = r.algebra;
  j["char"] = r.characteristic;
  j["ker_psi"] = r.ker_psi;
  j["hh1"] = r.hh1;
  j["ker_phi"] = r.ker_phi;
  j["hc1"] = r.hc1;
  j["ker_pi"] = r.ker_pi;
  j["im_B"] = r.im_B;
  j["omega1"] = r.omega1 ? nlohmann::ordered_json(*r.omega1) : nlohmann::ordered_json(nullptr);
  j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : r.checks) j["checks"].push_back({{"name", c.name}, {"pass", c.pass}, {"details", c.details}});
  j["seeds"] = r.seeds;
  j["banners"] = r.banners;
  return j;
}

std::string to_text(const ExtensionReport& r) {
  std::string out = fmt::format("sl({},{},{}) over {}\n", r.m, r.n, r.algebra,
                                r.characteristic == 0 ? std::string("Q") : fmt::format("F_{}", r.characteristic));
  for (const auto& b : r.banners) out += "  ! " + b + "\n";
  out += fmt::format("  ker_psi {:>3}   hh1 {:>3}\n", r.ker_psi, r.hh1);
  out += fmt::format("  ker_phi {:>3}   hc1 {:>3}\n", r.ker_phi, r.hc1);
  out += fmt::format("  ker_pi  {:>3}   im_B {:>2}\n", r.ker_pi, r.im_B);
  if (r.omega1) out += fmt::format("  omega1  {:>3}\n", *r.omega1);
  for (const auto& c : r.checks) out += fmt::format("  [{}] {}: {}\n", c.pass ? "PASS" : "FAIL", c.name, c.details);
  return out;
}

nlohmann::ordered_json to_json(const std::vector<ExtensionReport>& reports) {
  nlohmann::ordered_json j = nlohmann::ordered_json::array();
  for (const auto& r : reports) j.push_back(to_json(r));
  return j;
}

std::string to_text(const std::vector<ExtensionReport>& reports) {
  std::string out;
  std::size_t pass = 0;
  for (const auto& r : reports) {
    out += to_text(r);
    pass += r.all_pass();
  }
  out += fmt::format("{}/{} instances pass\n", pass, reports.size());
  return out;
}

std::vector<std::uint64_t> sample_seeds(std::uint64_t seed, std::size_t count) {
  std::mt19937_64 rng(seed);
  std::vector<std::uint64_t> out(count);
  for (auto& s : out) s = rng();
  return out;
}

namespace {

std::string dims(std::size_t a, std::size_t b) { return fmt::format("{} vs {}", a, b); }

// Runs one check; internal assertion failures become failed checks.
void attempt(ExtensionReport& r, const std::string& name, const std::function<std::pair<bool, std::string>()>& f) {
  try {
    auto [ok, details] = f();
    r.add(name, ok, std::move(details));
  } catch (const ComplexError& e) {
    r.add(name, false, e.what());
  } catch (const SuperAlgebraError& e) {
    r.add(name, false, e.what());
  }
}

}  // namespace

template <ExactScalar S>
ExtensionReport verify_theorems(std::size_t m, std::size_t n, const CoeffAlgebra<S>& a, const VerifyOptions& opts) {
  ExtensionReport r;
  r.m = m;
  r.n = n;
  r.algebra = a.name();
  r.characteristic = a.field().characteristic;
  if (auto banner = characteristic_guard(m, n, a.field()); !banner.empty()) r.banners.push_back(banner);
  r.seeds = sample_seeds(opts.seed, opts.samples);
  const FieldConfig& field = a.field();
  const LeibnizOptions capped{field.is_rational() ? opts.max_cols : 0};
  const LeibnizOptions uncapped{0};

  // coefficient-side oracles
  const auto hh1 = hochschild_homology(a, 1);
  const auto cyc = cyclic_complex(a, 2);
  const auto hc1 = cyc.complex.homology(1);
  const auto imb = induced_B_image(a, hh1);
  r.hh1 = hh1.dim;
  r.hc1 = hc1.dim;
  r.im_B = imb.image_dim;
  if (a.is_commutative()) r.omega1 = kahler_differentials(a).dim;

  // Lie side
  auto st = steinberg_realize(m, n, a, capped, false);
  const auto& stl = st.total();
  const auto& sl = st.sl().algebra;
  r.ker_psi = st.ker_psi().dim();
  const auto stq = slie_quotient(stl, "st(" + std::to_string(m) + "," + std::to_string(n) + "," + a.name() + ")");
  const auto& I = stq.ideal;
  ExactMatrix<S> phi(sl.dim(), stq.algebra.dim(), field);
  for (std::size_t c = 0; c < stq.algebra.dim(); ++c) phi.set_column(c, st.psi().column(stq.representatives[c]));
  const auto ker_phi = kernel(phi);
  r.ker_phi = ker_phi.dim();
  r.ker_pi = I.dim();

  r.add("ker_psi=hh1", r.ker_psi == r.hh1, dims(r.ker_psi, r.hh1));
  r.add("ker_phi=hc1", r.ker_phi == r.hc1, dims(r.ker_phi, r.hc1));
  r.add("ker_pi=im_B", r.ker_pi == r.im_B, dims(r.ker_pi, r.im_B));
  r.add("ker_pi=hh1-hc1", r.ker_pi + r.hc1 == r.hh1,
        fmt::format("{} vs {} - {}", r.ker_pi, r.hh1, r.hc1));
  if (r.omega1) r.add("hh1=omega1", r.hh1 == *r.omega1, dims(r.hh1, *r.omega1));

  // complexes
  attempt(r, "hochschild_dd=0", [&] {
    const auto c = hochschild_complex(a);
    return std::pair{true, fmt::format("d_n d_(n+1) = 0 for n <= {}", c.top() - 1)};
  });
  attempt(r, "cyclic_dd=0", [&] {
    const auto c = cyclic_complex(a, 3);
    return std::pair{true, fmt::format("induced boundaries descend, d d = 0 up to degree {}", c.complex.top())};
  });
  attempt(r, "connes_Bd+dB=0", [&] {
    connes_B(a, 0);
    connes_B(a, 1);
    return std::pair{true, std::string("n = 0, 1")};
  });
  attempt(r, "leibniz_d2d3=0", [&] {
    const auto d3 = leibniz_boundary_super(sl, 3, uncapped);
    return std::pair{true, fmt::format("{} columns of d_3 on sl", d3.cols())};
  });
  attempt(r, "ker_psi=hl2(sl)", [&] {
    const auto hl2 = leibniz_h2(sl, st.uce().boundaries);
    return std::pair{hl2.dim == r.ker_psi, dims(r.ker_psi, hl2.dim)};
  });
  attempt(r, "lie_h2(sl)=hc1", [&] {
    const auto h2 = lie_h2(sl, st.uce().boundaries);
    const auto hl2 = leibniz_h2(sl, st.uce().boundaries);
    const auto rank = hl2_to_h2_rank(hl2, h2);
    return std::pair{h2.homology.dim == r.hc1 && rank == h2.homology.dim,
                     fmt::format("H_2 {} vs hc1 {}; HL_2 -> H_2 rank {}", h2.homology.dim, r.hc1, rank)};
  });
  attempt(r, "lie_d2d3=0(st)", [&] {
    const auto img = leibniz_d3_image(stq.algebra, uncapped);
    const auto h2 = lie_h2(stq.algebra, img);
    const auto hl2 = leibniz_h2(stq.algebra, img);
    const auto rank = hl2_to_h2_rank(hl2, h2);
    return std::pair{rank == h2.homology.dim,
                     fmt::format("H_2(st) {}, HL_2(st) {}, HL_2 -> H_2 rank {}", h2.homology.dim, hl2.dim, rank)};
  });

  // presentation
  attempt(r, "steinberg_relations", [&] {
    const auto rep = verify_steinberg_relations(st);
    return std::pair{rep.ok(), rep.summary()};
  });
  attempt(r, "h_identities", [&] {
    const auto rep = h_identities(st);
    return std::pair{rep.ok(), rep.summary()};
  });
  r.add("phq_direct_sum", st.direct_sum(),
        fmt::format("P {} + H {} + Q {} vs total {}", st.P().dim(), st.H().dim(), st.Q().dim(), stl.dim()));
  r.add("ker_psi_in_H", st.H().contains(st.ker_psi()),
        fmt::format("ker_psi {}, H {}", st.ker_psi().dim(), st.H().dim()));
  const auto ext = check_extension(st.extension());
  r.add("centrality", ext.ok(),
        fmt::format("surjective {}, homomorphism {}, central {}", ext.surjective, ext.homomorphism, ext.central));
  r.add("stl_perfect", is_perfect(stl), fmt::format("dim stl {}", stl.dim()));
  attempt(r, "stl_leibniz", [&] {
    const auto rep = check_identities(stl);
    return std::pair{rep.is_leibniz(), fmt::format("{} Leibniz, {} grading violations", rep.leibniz_count,
                                                   rep.grading_count)};
  });
  r.add("tau_identity", tau_identity_holds(m, n), fmt::format("all index triples of size {}", m + n));

  // θ and the diagram
  const auto th = build_theta(st);
  r.add("theta_well_defined", th.well_defined, th.well_defined ? "str_2 kills im d_3 modulo Im d_2" : th.witness);
  const auto hh1_img = map_subspace(th.target.projector, hh1.cycles);
  const auto theta_ker_psi = map_subspace(th.map, st.ker_psi());
  r.add("theta(ker_psi)=HH1", theta_ker_psi == hh1_img && theta_ker_psi.dim() == r.ker_psi,
        fmt::format("rank {} on ker_psi {}, HH_1 image {}", theta_ker_psi.dim(), r.ker_psi, hh1_img.dim()));
  {
    const auto b0 = connes_B(a, 0);
    const auto b_img = map_subspace(th.target.projector, image(b0));
    const auto theta_i = map_subspace(th.map, I);
    r.add("theta(ker_pi)=im_B", theta_i == b_img && theta_i.dim() == r.ker_pi,
          fmt::format("rank {} on ker_pi {}, image of B {}", theta_i.dim(), r.ker_pi, b_img.dim()));
  }
  {
    // θ_c : stl -> C_1 / Im d̄_2
    const auto& q1 = cyc.quotients[1];
    const auto qc = quotient(q1.dim, image(cyc.complex.boundary(2)));
    const auto& reps = st.uce().classes.representatives;
    ExactMatrix<S> theta_c(qc.dim, reps.size(), field);
    for (std::size_t c = 0; c < reps.size(); ++c)
      theta_c.set_column(c, qc.projector.apply(q1.projector.apply(th.on_pairs.column(reps[c]))));
    const auto on_i = map_subspace(theta_c, I);
    r.add("theta_c_descends", on_i.dim() == 0, fmt::format("rank {} on ker_pi", on_i.dim()));
    const auto hc1_img = map_subspace(qc.projector, hc1.cycles);
    const auto on_ker = map_subspace(theta_c, st.ker_psi());
    r.add("theta_c(ker_phi)=HC1", on_ker == hc1_img && on_ker.dim() == r.ker_phi,
          fmt::format("rank {} on ker_phi {}, HC_1 image {}", on_ker.dim(), r.ker_phi, hc1_img.dim()));
  }
  r.add("phi*pi=psi", phi.compose(stq.projection) == st.psi(), "on every stl basis vector");

  // universality sampling
  attempt(r, "universality", [&] {
    const auto space = cocycle_space(sl, st.uce().boundaries);
    LiftSolver<S> solver(st.extension());
    std::size_t ok = 0;
    std::string first;
    for (std::size_t i = 0; i < r.seeds.size(); ++i) {
      const std::size_t target = 1 + i % 2;
      const auto w = cocycle_extension(sl, sample_cocycle(sl, space, target, r.seeds[i]));
      const auto lift = solver.solve(w);
      if (lift.ok())
        ++ok;
      else if (first.empty())
        first = fmt::format("; sample {}: {}", i + 1, lift.failure.empty() ? "lift not unique" : lift.failure);
    }
    return std::pair{ok == r.seeds.size(), fmt::format("{}/{} lifts, homogeneous dim {}{}", ok, r.seeds.size(),
                                                       solver.homogeneous_dim(), first)};
  });

  if (m + n == 3) {
    const auto d = diagonal_diagnostic(st);
    r.add("ad_diagonalizable", d.ok(),
          fmt::format("module {}, +1 eigenspace {}, -1 eigenspace {}, D^2 = I {}", d.module_dim, d.plus_dim,
                      d.minus_dim, d.involution));
  }
  return r;
}

ExtensionReport verify_instance(std::size_t m, std::size_t n, const CoeffAlgebra<Rational>& a,
                                const VerifyOptions& opts) {
  characteristic_guard(m, n, a.field());
  if (m + n >= 3 && opts.max_cols != 0) {
    const GeneralLinear<Rational> gl(m, n, a);
    const std::size_t dim = build_sl(gl).algebra.dim();
    if (dim * dim * dim > opts.max_cols) {
      auto r = verify_theorems(m, n, reduce_mod(a, kFallbackPrime), opts);
      r.banners.insert(r.banners.begin(),
                       fmt::format("probabilistic dimensions: dim sl = {} exceeds the exact cap ({}^3 > {}), "
                                   "computed over F_{}",
                                   dim, dim, opts.max_cols, kFallbackPrime));
      return r;
    }
  }
  return verify_theorems(m, n, a, opts);
}

ExtensionReport verify_instance(std::size_t m, std::size_t n, const CoeffAlgebra<ModP>& a,
                                const VerifyOptions& opts) {
  return verify_theorems(m, n, a, opts);
}

std::vector<SuiteInstance> default_suite() {
  std::vector<SuiteInstance> out;
  for (const auto& [m, n] : {std::pair<std::size_t, std::size_t>{2, 1}, {3, 1}, {2, 2}})
    for (const char* f :
         {"ground_field", "dual_numbers", "truncated_poly(3)", "cyclic_group_algebra(3)", "full_matrix(2)"})
      out.push_back(SuiteInstance{m, n, f});
  return out;
}

std::vector<ExtensionReport> run_suite(const std::vector<SuiteInstance>& suite, const FieldConfig& field,
                                       const VerifyOptions& opts) {
  std::vector<ExtensionReport> out;
  for (const auto& inst : suite) {
    if (field.is_rational())
      out.push_back(verify_instance(inst.m, inst.n, build_family<Rational>(inst.family, field), opts));
    else
      out.push_back(verify_instance(inst.m, inst.n, build_family<ModP>(inst.family, field), opts));
  }
  return out;
}

template ExtensionReport verify_theorems<Rational>(std::size_t, std::size_t, const CoeffAlgebra<Rational>&,
                                                   const VerifyOptions&);
template ExtensionReport verify_theorems<ModP>(std::size_t, std::size_t, const CoeffAlgebra<ModP>&,
                                               const VerifyOptions&);

}  // namespace uce
