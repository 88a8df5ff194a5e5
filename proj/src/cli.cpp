#include "uce/cli.hpp"

#include "uce/cocycles.hpp"
#include "uce/steinberg.hpp"
#include "uce/verifier.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <fstream>
#include <functional>
#include <ostream>

namespace uce {

namespace {

struct RunConfig {
  std::string family = "ground_field";
  std::string file;
  std::size_t m = 2;
  std::size_t n = 1;
  std::uint32_t characteristic = 0;
  bool override_guard = false;
  std::uint64_t seed = 0;
  std::string format = "text";
  std::string output;
  std::size_t degree = 1;
  bool suite = false;
  std::size_t max_cols = default_max_cols();
  std::size_t samples = 8;

  FieldConfig field() const {
    FieldConfig f{characteristic, override_guard};
    validate(f);
    return f;
  }
  VerifyOptions verify_options() const { return VerifyOptions{seed, samples, max_cols}; }
  bool json() const { return format == "json"; }
  /// the cap only guards exact arithmetic over Q
  LeibnizOptions leibniz_options(const FieldConfig& f) const { return LeibnizOptions{f.is_rational() ? max_cols : 0}; }
};

// A failed mathematical check; the message is the witness.
struct MathFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class Runner {
 public:
  Runner(RunConfig cfg, std::ostream& out, std::ostream& err) : cfg_(std::move(cfg)), out_(out), err_(err) {}

  int algebra_validate();
  int homology(const std::string& which);
  int super_build(bool sl);
  int super_check();
  int ext_realize();
  int ext_relations();
  int ext_theorems(bool report);
  int ext_universality();

 private:
  template <class F>
  int with_algebra(F&& f);
  template <ExactScalar S>
  CoeffAlgebra<S> load(const FieldConfig& field);
  void require_extension_shape() const;
  void note_guard(const FieldConfig& field) const;
  void emit(const std::string& text);
  void emit(const nlohmann::ordered_json& j) { emit(j.dump(2) + "\n"); }

  RunConfig cfg_;
  std::ostream& out_;
  std::ostream& err_;
};

void Runner::emit(const std::string& text) {
  if (cfg_.output.empty()) {
    out_ << text;
    return;
  }
  std::ofstream f(cfg_.output, std::ios::binary | std::ios::trunc);
  if (!f) throw ConfigError("cannot open " + cfg_.output + " for writing");
  f << text;
  if (!f) throw ConfigError("write to " + cfg_.output + " failed");
}

void Runner::require_extension_shape() const {
  if (cfg_.m + cfg_.n < 3) throw ConfigError("extension commands need m+n >= 3");
}

void Runner::note_guard(const FieldConfig& field) const {
  const auto banner = characteristic_guard(cfg_.m, cfg_.n, field);
  if (!banner.empty()) err_ << "! " << banner << "\n";
}

template <ExactScalar S>
CoeffAlgebra<S> Runner::load(const FieldConfig& field) {
  std::string path = cfg_.file;
  if (path.empty()) {
    const auto spec = parse_family(cfg_.family);
    if (spec.family != "custom_file") return build_family<S>(spec, field);
    path = spec.path;
  }
  auto a = load_algebra<S>(path, field);
  const auto violations = validate(a);
  if (!violations.empty()) {
    std::string msg = fmt::format("{} fails validation ({} violation(s))", a.name(), violations.size());
    for (std::size_t i = 0; i < violations.size() && i < 10; ++i) msg += "\n  " + violations[i].describe();
    throw MathFailure(msg);
  }
  return a;
}

template <class F>
int Runner::with_algebra(F&& f) {
  const FieldConfig field = cfg_.field();
  if (field.is_rational()) return f(load<Rational>(field));
  return f(load<ModP>(field));
}

int Runner::algebra_validate() {
  return with_algebra([&](const auto& a) {
    if (cfg_.json()) {
      nlohmann::ordered_json j;
      j["valid"] = true;
      j["algebra"] = to_json(a);
      emit(j);
    } else {
      emit(fmt::format("valid: {} over {}, dim {}, {}\n", a.name(), a.field().name(), a.dim(),
                       a.is_commutative() ? "commutative" : "noncommutative"));
    }
    return kExitPass;
  });
}

int Runner::homology(const std::string& which) {
  if (which == "hh" && cfg_.degree > 2) throw ConfigError("HH is available in degrees 0..2");
  if (which == "hc" && cfg_.degree > 1) throw ConfigError("HC is available in degrees 0..1");
  return with_algebra([&](const auto& a) {
    if (which == "imb") {
      const auto b = induced_B_image(a);
      if (cfg_.json()) {
        nlohmann::ordered_json j;
        j["algebra"] = a.name();
        j["char"] = a.field().characteristic;
        j["im_B"] = b.image_dim;
        j["hh1"] = b.map.rows();
        j["hc0"] = b.map.cols();
        emit(j);
      } else {
        emit(fmt::format("Im B(HC_0 -> HH_1) of {} over {}: dim {}\n", a.name(), a.field().name(), b.image_dim));
      }
      return kExitPass;
    }
    const auto h = which == "hh" ? hochschild_homology(a, cfg_.degree) : cyclic_homology(a, cfg_.degree);
    if (cfg_.json()) {
      nlohmann::ordered_json j;
      j["algebra"] = a.name();
      j["char"] = a.field().characteristic;
      j["kind"] = which;
      j["homology"] = to_json(h);
      emit(j);
    } else {
      emit(fmt::format("{}_{}({}) over {}: dim {}\n", which == "hh" ? "HH" : "HC", cfg_.degree, a.name(),
                       a.field().name(), h.dim));
    }
    return kExitPass;
  });
}

int Runner::super_build(bool want_sl) {
  return with_algebra([&](const auto& a) {
    using S = typename std::decay_t<decltype(a)>::Scalar;
    const GeneralLinear<S> gl(cfg_.m, cfg_.n, a);
    if (!want_sl) {
      const auto& l = gl.algebra();
      std::size_t odd = 0;
      for (std::size_t i = 0; i < l.dim(); ++i) odd += l.parity(i);
      if (cfg_.json())
        emit(to_json(l));
      else
        emit(fmt::format("{}: dim {} (even {}, odd {})\n", l.name(), l.dim(), l.dim() - odd, odd));
      return kExitPass;
    }
    const auto sl = build_sl(gl);
    const auto cmp = compare_supertrace(gl, sl);
    const bool perfect = is_perfect(sl.algebra);
    if (cfg_.json()) {
      nlohmann::ordered_json j;
      j["algebra"] = to_json(sl.algebra);
      j["str_in_commutators"] = cmp.equals_commutator_condition;
      j["str_zero"] = cmp.equals_zero_condition;
      j["perfect"] = perfect;
      emit(j);
    } else {
      emit(fmt::format("{}: dim {}\n  equals {{X : str X in [A,A]}}: {}\n  equals {{X : str X = 0}}: {}\n"
                       "  perfect: {}\n",
                       sl.algebra.name(), sl.algebra.dim(), cmp.equals_commutator_condition,
                       cmp.equals_zero_condition, perfect));
    }
    return cmp.equals_commutator_condition ? kExitPass : kExitMathFailure;
  });
}

int Runner::super_check() {
  return with_algebra([&](const auto& a) {
    using S = typename std::decay_t<decltype(a)>::Scalar;
    const GeneralLinear<S> gl(cfg_.m, cfg_.n, a);
    const auto sl = build_sl(gl);
    const bool tau_ok = tau_identity_holds(cfg_.m, cfg_.n);
    std::string text;
    nlohmann::ordered_json j;
    j["tau_identity"] = tau_ok;
    bool ok = tau_ok;
    text += fmt::format("tau identity: {}\n", tau_ok ? "holds" : "FAILS");
    for (const auto* l : {&gl.algebra(), &sl.algebra}) {
      const auto rep = check_identities(*l);
      ok = ok && rep.is_lie();
      text += fmt::format("{}: {} Leibniz, {} antisymmetry, {} grading violations\n", l->name(), rep.leibniz_count,
                          rep.lie_count, rep.grading_count);
      const auto& lab = l->labels();
      for (const auto& v : rep.leibniz)
        text += fmt::format("  Leibniz identity fails on ({}, {}, {})\n", lab[v.i], lab[v.j], lab[v.k]);
      for (const auto& v : rep.lie) text += fmt::format("  antisymmetry fails on ({}, {})\n", lab[v.i], lab[v.j]);
      for (const auto& v : rep.grading) text += fmt::format("  grading fails on ({}, {})\n", lab[v.i], lab[v.j]);
      j[l->name()] = {{"leibniz", rep.leibniz_count}, {"antisymmetry", rep.lie_count}, {"grading", rep.grading_count}};
    }
    j["pass"] = ok;
    emit(cfg_.json() ? j.dump(2) + "\n" : text);
    return ok ? kExitPass : kExitMathFailure;
  });
}

int Runner::ext_realize() {
  require_extension_shape();
  return with_algebra([&](const auto& a) {
    note_guard(a.field());
    const auto st = steinberg_realize(cfg_.m, cfg_.n, a, cfg_.leibniz_options(a.field()), false);
    nlohmann::ordered_json j;
    j["m"] = cfg_.m;
    j["n"] = cfg_.n;
    j["algebra"] = a.name();
    j["char"] = a.field().characteristic;
    j["dim_sl"] = st.sl().algebra.dim();
    j["dim_stl"] = st.total().dim();
    j["ker_psi"] = st.ker_psi().dim();
    j["P"] = st.P().dim();
    j["H"] = st.H().dim();
    j["Q"] = st.Q().dim();
    j["direct_sum"] = st.direct_sum();
    if (cfg_.json())
      emit(j);
    else
      emit(fmt::format("stl({},{},{}) over {}: dim {} -> sl dim {}, ker psi dim {}\n  P {} + H {} + Q {}: {}\n",
                       cfg_.m, cfg_.n, a.name(), a.field().name(), st.total().dim(), st.sl().algebra.dim(),
                       st.ker_psi().dim(), st.P().dim(), st.H().dim(), st.Q().dim(),
                       st.direct_sum() ? "direct" : "NOT a direct sum of the total space"));
    return st.direct_sum() ? kExitPass : kExitMathFailure;
  });
}

int Runner::ext_relations() {
  require_extension_shape();
  return with_algebra([&](const auto& a) {
    note_guard(a.field());
    const auto st = steinberg_realize(cfg_.m, cfg_.n, a, cfg_.leibniz_options(a.field()), false);
    const auto rel = verify_steinberg_relations(st);
    const auto hid = h_identities(st);
    nlohmann::ordered_json j;
    std::string text;
    for (const auto& [name, rep] : {std::pair<std::string, const RelationReport&>{"relations", rel}, {"h_identities", hid}}) {
      j[name] = {{"checked", rep.checked}, {"violations", rep.violations}, {"witnesses", rep.messages}};
      text += fmt::format("{}: {}\n", name, rep.summary());
      for (const auto& m : rep.messages) text += "  " + m + "\n";
    }
    emit(cfg_.json() ? j.dump(2) + "\n" : text);
    return rel.ok() && hid.ok() ? kExitPass : kExitMathFailure;
  });
}

int Runner::ext_theorems(bool report) {
  std::vector<ExtensionReport> reports;
  const VerifyOptions opts = cfg_.verify_options();
  if (cfg_.suite) {
    reports = run_suite(default_suite(), cfg_.field(), opts);
  } else {
    require_extension_shape();
    with_algebra([&](const auto& a) {
      reports.push_back(verify_instance(cfg_.m, cfg_.n, a, opts));
      return kExitPass;
    });
  }
  bool ok = true;
  for (const auto& r : reports) ok = ok && r.all_pass();
  const auto json = cfg_.suite ? to_json(reports) : to_json(reports.front());
  if (report) {
    // JSON artifact plus the table on stdout
    emit(json);
    if (!cfg_.output.empty()) out_ << (cfg_.suite ? to_text(reports) : to_text(reports.front()));
  } else if (cfg_.json()) {
    emit(json);
  } else {
    emit(cfg_.suite ? to_text(reports) : to_text(reports.front()));
  }
  return ok ? kExitPass : kExitMathFailure;
}

int Runner::ext_universality() {
  require_extension_shape();
  return with_algebra([&](const auto& a) {
    using S = typename std::decay_t<decltype(a)>::Scalar;
    note_guard(a.field());
    const auto st = steinberg_realize(cfg_.m, cfg_.n, a, cfg_.leibniz_options(a.field()), false);
    const auto& sl = st.sl().algebra;
    const auto space = cocycle_space(sl, st.uce().boundaries);
    LiftSolver<S> solver(st.extension());
    const auto seeds = sample_seeds(cfg_.seed, cfg_.samples);
    nlohmann::ordered_json j;
    j["homogeneous_dim"] = solver.homogeneous_dim();
    j["samples"] = nlohmann::ordered_json::array();
    std::string text = fmt::format("homogeneous lift space: dim {}\n", solver.homogeneous_dim());
    bool ok = true;
    for (std::size_t i = 0; i < seeds.size(); ++i) {
      const std::size_t target = 1 + i % 2;
      const auto w = cocycle_extension(sl, sample_cocycle(sl, space, target, seeds[i]));
      const auto lift = solver.solve(w);
      ok = ok && lift.ok();
      j["samples"].push_back({{"seed", seeds[i]}, {"target_dim", target}, {"lift", lift.ok()}, {"failure", lift.failure}});
      text += fmt::format("  sample {} (seed {}, target dim {}): {}\n", i + 1, seeds[i], target,
                          lift.ok() ? "unique lift" : "FAIL " + lift.failure);
    }
    j["pass"] = ok;
    emit(cfg_.json() ? j.dump(2) + "\n" : text);
    return ok ? kExitPass : kExitMathFailure;
  });
}

void add_common(CLI::App* app, RunConfig& c) {
  app->add_option("--family", c.family, "coefficient algebra family, e.g. truncated_poly(3)");
  app->add_option("--file", c.file, "coefficient algebra JSON document");
  app->add_option("--m", c.m, "even block size");
  app->add_option("--n", c.n, "odd block size");
  app->add_option("--char", c.characteristic, "field characteristic (0 for Q)");
  app->add_flag("--override-char-guard", c.override_guard, "run instances the characteristic guard refuses");
  app->add_option("--seed", c.seed, "seed for every random choice");
  app->add_option("--format", c.format, "output format")->check(CLI::IsMember({"text", "json"}));
  app->add_option("--output", c.output, "write the report to this file");
  app->add_option("--degree", c.degree, "homology degree");
  app->add_flag("--suite", c.suite, "run the default instance matrix");
  app->add_option("--max-cols", c.max_cols, "cap on (dim L)^3 for exact d_3 over Q; 0 disables");
  app->add_option("--samples", c.samples, "cocycle samples for universality");
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Universal central extensions of sl(m,n,A) and their homology"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::function<int(Runner&)> action;

  const auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help,
                        std::function<int(Runner&)> f) {
    auto* sub = parent->add_subcommand(name, help);
    add_common(sub, cfg);
    sub->callback([&action, f] { action = f; });
  };

  auto* algebra = app.add_subcommand("algebra", "coefficient algebras")->require_subcommand(1);
  leaf(algebra, "validate", "check associativity and unit laws", [](Runner& r) { return r.algebra_validate(); });

  auto* homology = app.add_subcommand("homology", "Hochschild and cyclic homology")->require_subcommand(1);
  leaf(homology, "hh", "Hochschild homology", [](Runner& r) { return r.homology("hh"); });
  leaf(homology, "hc", "cyclic homology", [](Runner& r) { return r.homology("hc"); });
  leaf(homology, "imb", "image of the induced Connes map HC_0 -> HH_1", [](Runner& r) { return r.homology("imb"); });

  auto* super = app.add_subcommand("super", "matrix superalgebras")->require_subcommand(1);
  leaf(super, "build-gl", "gl(m,n,A)", [](Runner& r) { return r.super_build(false); });
  leaf(super, "build-sl", "sl(m,n,A) = [gl, gl]", [](Runner& r) { return r.super_build(true); });
  leaf(super, "check", "identity checks on gl and sl", [](Runner& r) { return r.super_check(); });

  auto* ext = app.add_subcommand("ext", "central extensions")->require_subcommand(1);
  leaf(ext, "realize", "build stl(m,n,A)", [](Runner& r) { return r.ext_realize(); });
  leaf(ext, "verify-relations", "Steinberg relations and H identities", [](Runner& r) { return r.ext_relations(); });
  leaf(ext, "verify-theorems", "kernel comparisons and diagram checks", [](Runner& r) { return r.ext_theorems(false); });
  leaf(ext, "sample-universality", "lifts into sampled cocycle extensions",
       [](Runner& r) { return r.ext_universality(); });
  leaf(&app, "report", "write the JSON report and print the table", [](Runner& r) { return r.ext_theorems(true); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitConfigError;
  }
  Runner runner(cfg, out, err);
  try {
    return action(runner);
  } catch (const MathFailure& e) {
    err << "check failed: " << e.what() << "\n";
    return kExitMathFailure;
  } catch (const ComplexError& e) {
    err << "check failed: " << e.what() << "\n";
    return kExitMathFailure;
  } catch (const SuperAlgebraError& e) {
    err << "check failed: " << e.what() << "\n";
    return kExitMathFailure;
  } catch (const std::exception& e) {
    // configuration, IO, guard refusals and resource caps
    err << "error: " << e.what() << "\n";
    return kExitConfigError;
  }
}

}  // namespace uce
