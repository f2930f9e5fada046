#include "ncg/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <set>
#include <stdexcept>

#include "ncg/errors.hpp"
#include "ncg/principal.hpp"

namespace ncg {

namespace {

const std::set<std::string> kKeys = {"id",           "theta",         "n",
                                     "m",            "lambda",        "gamma_sign",
                                     "multiplicity", "connection",    "tolerance",
                                     "seed",         "expect_compatible", "sector_radius",
                                     "principality_radius", "spectra", "symbol_override",
                                     "out_dir",      "description"};

ThetaMatrix parse_theta(const Json& j, int dim, std::uint64_t seed) {
  if (j.is_string()) {
    const auto name = j.get<std::string>();
    if (name == "zero") return ThetaMatrix(dim);
    if (name == "random") {
      std::mt19937_64 rng(seed);
      return ThetaMatrix::random(dim, rng, 0.5);
    }
    throw std::invalid_argument("unknown theta preset '" + name + "'");
  }
  return theta_from_json(j);
}

bool has_twist(const ConnectionFamily& f) {
  for (const auto& row : f.b) {
    for (const auto& x : row) {
      if (!x.is_zero()) return true;
    }
  }
  return std::any_of(f.extra.begin(), f.extra.end(), [](const Presentation& p) { return !p.empty(); });
}

void blocked(VerificationReport& r, const std::string& stage) {
  r.add_decided(stage + ".blocked", "a prerequisite stage failed", std::numeric_limits<double>::quiet_NaN(), 0,
                false);
}

void write_spectrum(const std::filesystem::path& dir, const std::string& name, const LinearOperator& op,
                    std::vector<std::string>& files) {
  const auto rows = merge_spectrum(spectrum(op, 1e-9));
  const auto path = dir / ("spectrum_" + name + ".csv");
  write_text_file(path, spectrum_csv(rows));
  files.push_back(path.filename().string());
}

}  // namespace

ScenarioConfig parse_config(const Json& j) {
  if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (!kKeys.count(key)) throw std::invalid_argument("unknown config key '" + key + "'");
  }
  ScenarioConfig c;
  try {
    c.id = j.value("id", std::string("scenario"));
    c.n = j.at("n").get<int>();
    c.m = j.at("m").get<int>();
    c.lambda = j.value("lambda", 4);
    c.gamma_sign = j.value("gamma_sign", 1);
    c.multiplicity = j.value("multiplicity", 0);
    c.connection = j.value("connection", Json("canonical"));
    c.tolerance = j.value("tolerance", 1e-12);
    c.seed = j.value("seed", std::uint64_t{7});
    if (j.contains("expect_compatible")) c.expect_compatible = j.at("expect_compatible").get<bool>();
    c.sector_radius = j.value("sector_radius", 1);
    c.principality_radius = j.value("principality_radius", 1);
    c.spectra = j.value("spectra", true);
    if (j.contains("symbol_override")) {
      const auto& s = j.at("symbol_override");
      c.symbol_override = SymbolOverride{s.at("slot").get<int>(), s.at("gammas").get<std::vector<int>>()};
    }
    c.out_dir = j.value("out_dir", std::string("out/") + c.id);
    c.theta = parse_theta(j.value("theta", Json("zero")), c.n + c.m, c.seed);
  } catch (const Json::exception& e) {
    throw std::invalid_argument(std::string("malformed config: ") + e.what());
  }
  if (c.n < 1 || c.m < 0) throw std::invalid_argument("need n >= 1 and m >= 0");
  if (c.theta.dim() != c.n + c.m) throw std::invalid_argument("theta dimension must equal n + m");
  if (c.lambda < 1) throw std::invalid_argument("lambda must be >= 1");
  if (c.gamma_sign != 1 && c.gamma_sign != -1) throw std::invalid_argument("gamma_sign must be +1 or -1");
  if (c.multiplicity < 0 || c.multiplicity > 2) throw std::invalid_argument("multiplicity must be 0, 1 or 2");
  if (!(c.tolerance > 0)) throw std::invalid_argument("tolerance must be positive");
  if (c.sector_radius < 0 || c.principality_radius < 0) throw std::invalid_argument("radii must be >= 0");
  if (c.symbol_override) {
    const auto& s = *c.symbol_override;
    if (s.slot < 1 || s.slot > c.n + c.m) throw std::invalid_argument("symbol_override slot out of range");
    for (int g : s.gammas) {
      if (g < 1 || g > c.n + c.m) throw std::invalid_argument("symbol_override gamma out of range");
    }
  }
  return c;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  const Json j = read_json_file(path);
  auto c = parse_config(j);
  if (!j.contains("id")) c.id = path.stem().string();
  if (!j.contains("out_dir")) c.out_dir = std::filesystem::path("out") / c.id;
  return c;
}

ConnectionFamily build_family(const ScenarioConfig& config, const ThetaPtr& theta) {
  ConnectionFamily family;
  const auto& spec = config.connection;
  if (spec.is_string()) {
    const auto s = spec.get<std::string>();
    if (s == "canonical") {
      family = ConnectionFamily::canonical(theta, config.n, config.m);
    } else if (s.rfind("constant:", 0) == 0) {
      std::vector<double> c;
      try {
        c = Json::parse(s.substr(9)).get<std::vector<double>>();
      } catch (const Json::exception&) {
        throw std::invalid_argument("constant connection needs a JSON list, e.g. constant:[1,-2]");
      }
      family = ConnectionFamily::constant(theta, config.n, config.m, c);
    } else {
      throw std::invalid_argument("unknown connection preset '" + s + "'");
    }
  } else if (spec.is_object()) {
    try {
      family = family_from_json(spec, theta);
    } catch (const Json::exception& e) {
      throw std::invalid_argument(std::string("malformed connection: ") + e.what());
    }
    if (family.n != config.n || family.m != config.m) throw std::invalid_argument("connection n, m mismatch");
  } else {
    throw std::invalid_argument("connection must be a preset string or a family object");
  }
  if (config.lambda < family.degree() + 2) {
    throw std::invalid_argument("lambda must be at least the connection degree + 2");
  }
  return family;
}

bool RunReport::passed() const {
  return std::all_of(stages.begin(), stages.end(), [](const StageReport& s) { return s.report.all_passed(); });
}

Json RunReport::to_json() const {
  Json st = Json::object();
  for (const auto& s : stages) {
    st[s.stage] = {{"passed", s.report.all_passed()}, {"checks", report_to_json(s.report)}};
  }
  Json out = {{"scenario", id}, {"seed", seed}, {"passed", passed()}, {"stages", std::move(st)},
              {"spectra", spectra_files}};
  if (compatibility_deviation) out["compatibility"] = {{"deviation", *compatibility_deviation}, {"compatible", *compatible}};
  return out;
}

RunReport run_scenario(const ScenarioConfig& config, const std::vector<std::string>& only) {
  for (const auto& s : only) {
    if (std::find(kStages.begin(), kStages.end(), s) == kStages.end()) {
      throw std::invalid_argument("unknown check '" + s + "'");
    }
  }
  auto wanted = [&](const std::string& s) { return only.empty() || std::find(only.begin(), only.end(), s) != only.end(); };
  auto any_wanted = [&](std::initializer_list<const char*> names) {
    return std::any_of(names.begin(), names.end(), [&](const char* s) { return wanted(s); });
  };

  RunReport run;
  run.id = config.id;
  run.seed = config.seed;
  auto stage = [&](const std::string& name) -> VerificationReport& {
    run.stages.push_back({name, {}});
    return run.stages.back().report;
  };

  const auto theta = make_theta(config.theta);
  const auto family = build_family(config, theta);
  const double tol = config.tolerance;

  if (wanted("principality")) {
    stage("principality") = check_principality(theta, config.n, lattice_box(config.n, config.principality_radius), tol);
  }

  // Triple and grading.
  std::optional<ProjectabilityData> p;
  VerificationReport grading_failure;
  try {
    auto base = projectable_flat_example(theta, config.n, config.m, config.lambda, config.gamma_sign,
                                         config.multiplicity, tol);
    if (config.symbol_override) {
      auto symbols = base.triple.dirac_symbols;
      const int n = base.triple.space.spinor_dim();
      Matrix s = Matrix::Zero(n, n);
      for (int g : config.symbol_override->gammas) s += base.triple.gammas.matrices[static_cast<std::size_t>(g - 1)];
      symbols[static_cast<std::size_t>(config.symbol_override->slot - 1)] = s;
      base = make_projectable(with_dirac_symbols(base.triple, symbols), config.gamma_sign, base.doubled, tol);
    }
    p = std::move(base);
  } catch (const PreconditionError& e) {
    grading_failure = e.report();
    if (grading_failure.empty()) blocked(grading_failure, "projectability");
  }

  if (wanted("triple")) {
    auto& r = stage("triple");
    if (p) {
      TripleCheckOptions opts;
      opts.tolerance = tol;
      opts.seed = config.seed;
      r = verify_equivariant_real_triple(p->triple, opts);
    } else {
      blocked(r, "triple");
    }
  }
  if (wanted("calculus")) {
    auto& r = stage("calculus");
    if (p) {
      std::mt19937_64 rng(config.seed);
      r = check_calculus_compatibility(p->triple, generate_syzygies(p->triple, rng, 6), tol);
    } else {
      blocked(r, "calculus");
    }
  }
  if (wanted("projectability")) {
    auto& r = stage("projectability");
    if (p) {
      r = check_grading(p->triple, p->Gamma, tol);
    } else {
      r = grading_failure;
    }
  }
  if (wanted("fibres")) {
    auto& r = stage("fibres");
    if (p) {
      r = check_isometric_fibres(*p, tol);
    } else {
      blocked(r, "fibres");
    }
  }
  if (!p) {
    for (const char* s : {"base", "connection", "twist", "compatibility", "sectors", "reprojection"}) {
      if (wanted(s)) blocked(stage(s), s);
    }
    return run;
  }

  // Base triple on H_0.
  std::optional<BaseTriple> base;
  if (any_wanted({"base", "connection", "twist", "compatibility", "sectors", "reprojection"})) {
    VerificationReport r;
    try {
      base = restrict_to_H0(*p, 3, config.seed, tol);
      r = base->report;
      r.append(verify_base_kr(*base, tol));
    } catch (const PreconditionError& e) {
      r = e.report();
      blocked(r, "base");
    }
    if (wanted("base")) stage("base") = r;
  }
  std::vector<MultiIndex> degrees;
  for (const auto& q : lattice_box(config.n, config.sector_radius)) degrees.push_back(q);

  if (wanted("connection")) {
    auto& r = stage("connection");
    r = check_strong_connection(family, p->triple, 4, config.seed, tol);
    for (int i = 0; i < config.n; ++i) {
      MultiIndex q(static_cast<std::size_t>(config.n), 0);
      q[static_cast<std::size_t>(i)] = 1;
      r.append(connection_from_ell(q, p->triple, tol).report);
    }
    if (base) {
      std::vector<MultiIndex> nonzero;
      for (const auto& q : lattice_box(config.n, 1)) {
        if (std::any_of(q.begin(), q.end(), [](int v) { return v != 0; })) nonzero.push_back(q);
      }
      r.append(check_nabla(family, *base, *p, nonzero, 1, config.seed, tol));
    } else {
      blocked(r, "connection");
    }
  }

  std::optional<TwistData> tw;
  VerificationReport twist_failure;
  if (base && any_wanted({"twist", "compatibility", "sectors", "reprojection"})) {
    try {
      tw = twisted_dirac(*base, family, *p, std::nullopt, tol);
    } catch (const PreconditionError& e) {
      twist_failure = e.report();
    }
  }
  if (wanted("twist")) {
    auto& r = stage("twist");
    if (tw) {
      r = verify_twist(*tw, family, *p, 2, config.seed, tol);
    } else {
      r = twist_failure;
      blocked(r, "twist");
    }
  }
  if (wanted("compatibility")) {
    auto& r = stage("compatibility");
    if (tw) {
      const double dev = compatibility_deviation(*tw, *p);
      const bool compatible = dev <= tol;
      const bool expected = config.expect_compatible.value_or(!has_twist(family));
      run.compatibility_deviation = dev;
      run.compatible = compatible;
      r.add_decided("compatibility.deviation",
                    expected ? "D_omega = D_h on the interior (expected compatible)"
                             : "D_omega != D_h on the interior (expected incompatible)",
                    dev, std::max(tw->D_omega.shift_radius(), p->D_h.shift_radius()), compatible == expected);
    } else {
      blocked(r, "compatibility");
    }
  }
  if (wanted("sectors")) {
    auto& r = stage("sectors");
    if (tw) {
      r = check_sector_equivalence(*tw, family, *p, degrees, tol);
    } else {
      blocked(r, "sectors");
    }
  }
  if (wanted("reprojection")) {
    auto& r = stage("reprojection");
    if (tw) {
      r = verify_reprojection(*tw, *p, tol);
    } else {
      blocked(r, "reprojection");
    }
  }

  if (config.spectra && only.empty()) {
    const auto& dir = config.out_dir;
    write_spectrum(dir, "D", p->triple.D, run.spectra_files);
    write_spectrum(dir, "D_h", p->D_h, run.spectra_files);
    if (tw) {
      write_spectrum(dir, "D_omega", tw->D_omega, run.spectra_files);
      write_spectrum(dir, "script_D_omega", tw->script_D_omega, run.spectra_files);
    }
  }
  return run;
}

bool SweepReport::passed() const {
  return std::all_of(entries.begin(), entries.end(), [](const KRSweepEntry& e) { return e.report.all_passed(); });
}

Json SweepReport::to_json() const {
  Json rows = Json::array();
  for (const auto& e : entries) {
    rows.push_back({{"recipe", recipe_to_json(e.recipe)},
                    {"doubled", e.doubled},
                    {"passed", e.report.all_passed()},
                    {"checks", report_to_json(e.report)}});
  }
  return {{"sweep", "kr"}, {"passed", passed()}, {"entries", std::move(rows)}};
}

SweepReport run_kr_sweep(int max_dim, int cutoff, std::uint64_t seed, double tolerance) {
  return SweepReport{kr_sweep(max_dim, cutoff, seed, tolerance)};
}

}  // namespace ncg
