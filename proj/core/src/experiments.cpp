#include "semigroup_lab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

namespace semigroup_lab {

namespace {

using nlohmann::json;

[[noreturn]] void config_fail(const std::string& field, const std::string& message) {
  throw ConfigError("config field '" + field + "': " + message);
}

ExperimentKind parse_kind(const std::string& kind) {
  if (kind == "stability") return ExperimentKind::stability;
  if (kind == "evolve") return ExperimentKind::evolve;
  if (kind == "cauchy") return ExperimentKind::cauchy;
  if (kind == "trotter") return ExperimentKind::trotter;
  if (kind == "criteria") return ExperimentKind::criteria;
  if (kind == "lemmas") return ExperimentKind::lemmas;
  config_fail("kind", "unknown experiment kind '" + kind + "'");
}

const char* kind_name(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::stability: return "stability";
    case ExperimentKind::evolve: return "evolve";
    case ExperimentKind::cauchy: return "cauchy";
    case ExperimentKind::trotter: return "trotter";
    case ExperimentKind::criteria: return "criteria";
    case ExperimentKind::lemmas: return "lemmas";
  }
  return "?";
}

// Deterministic name hash (FNV-1a) for differentiating fixtures that share
// the experiment-level seed; std::hash is not stable across builds.
std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

double require_positive(const json& block, const std::string& field, double fallback) {
  if (!block.contains(field)) return fallback;
  const double value = block.at(field).get<double>();
  if (!(value > 0.0) || !std::isfinite(value)) config_fail(field, "must be positive");
  return value;
}

std::vector<int> parse_int_list(const json& value, const std::string& field) {
  if (!value.is_array() || value.empty()) config_fail(field, "must be a nonempty array");
  std::vector<int> result;
  for (const auto& item : value) {
    if (!item.is_number_integer() || item.get<int>() < 1) {
      config_fail(field, "entries must be positive integers");
    }
    result.push_back(item.get<int>());
  }
  return result;
}

std::vector<double> parse_real_list(const json& value, const std::string& field) {
  if (!value.is_array() || value.empty()) config_fail(field, "must be a nonempty array");
  std::vector<double> result;
  for (const auto& item : value) {
    if (!item.is_number()) config_fail(field, "entries must be numbers");
    result.push_back(item.get<double>());
  }
  return result;
}

struct ParsedFixture {
  FixtureDescriptor descriptor;
  bool uses_experiment_seed = false;
};

ParsedFixture parse_fixture(const json& block, const std::string& path) {
  if (!block.is_object() || !block.contains("kind")) config_fail(path, "needs a 'kind'");
  ParsedFixture parsed;
  FixtureDescriptor& d = parsed.descriptor;
  const std::string kind = block.at("kind").get<std::string>();
  if (kind == "laplacian1d") {
    d.kind = FixtureKind::laplacian1d;
    d.size = block.value("size", 0);
    if (d.size < 2) config_fail(path + ".size", "laplacian1d needs size >= 2");
  } else if (kind == "multiplication") {
    d.kind = FixtureKind::multiplication;
    if (!block.contains("samples")) config_fail(path + ".samples", "required");
    for (const auto& sample : block.at("samples")) {
      if (sample.is_number()) {
        d.samples.emplace_back(sample.get<double>(), 0.0);
      } else if (sample.is_array() && sample.size() == 2) {
        d.samples.emplace_back(sample.at(0).get<double>(), sample.at(1).get<double>());
      } else {
        config_fail(path + ".samples", "entries must be numbers or [re, im] pairs");
      }
    }
    if (d.samples.empty()) config_fail(path + ".samples", "must be nonempty");
    d.size = static_cast<int>(d.samples.size());
  } else if (kind == "nilpotent_pair") {
    d.kind = FixtureKind::nilpotent_pair;
    d.size = 2;
  } else if (kind == "skew_pair") {
    d.kind = FixtureKind::skew_pair;
    d.size = block.value("size", 0);
    d.field = Field::Complex;
    if (d.size < 1) config_fail(path + ".size", "skew_pair needs size >= 1");
  } else if (kind == "random") {
    d.kind = FixtureKind::random;
    d.size = block.value("size", 0);
    if (d.size < 1) config_fail(path + ".size", "random needs size >= 1");
    const std::string field = block.value("field", "R");
    if (field == "R") {
      d.field = Field::Real;
    } else if (field == "C") {
      d.field = Field::Complex;
    } else {
      config_fail(path + ".field", "must be 'R' or 'C'");
    }
  } else {
    config_fail(path + ".kind", "unknown fixture kind '" + kind + "'");
  }

  if (block.contains("seed")) {
    d.seed = block.at("seed").get<std::uint64_t>();
  } else {
    parsed.uses_experiment_seed = true;
  }
  return parsed;
}

// ---------------------------------------------------------------------------
// Run-time resolution of fixtures, families, and initial states.

struct ResolvedContext {
  std::map<std::string, FixtureDescriptor> fixtures;

  const FixtureDescriptor& fixture(const std::string& name, const std::string& field) const {
    auto it = fixtures.find(name);
    if (it == fixtures.end()) config_fail(field, "unknown fixture '" + name + "'");
    return it->second;
  }
  LinearMap map_fixture(const std::string& name, const std::string& field) const {
    const FixtureDescriptor& d = fixture(name, field);
    if (is_pair_fixture(d.kind)) config_fail(field, "'" + name + "' is a pair fixture");
    return make_fixture(d);
  }
  SplitPair pair_fixture(const std::string& name, const std::string& field) const {
    const FixtureDescriptor& d = fixture(name, field);
    if (!is_pair_fixture(d.kind)) config_fail(field, "'" + name + "' is not a pair fixture");
    return make_split_pair(d);
  }
};

std::string family_operand(const json& family, const char* key) {
  if (!family.contains(key)) config_fail(std::string("family.") + key, "required");
  return family.at(key).get<std::string>();
}

SplitPair resolve_split(const json& family, const ResolvedContext& ctx) {
  if (family.contains("pair")) {
    return ctx.pair_fixture(family.at("pair").get<std::string>(), "family.pair");
  }
  return SplitPair(ctx.map_fixture(family_operand(family, "c"), "family.c"),
                   ctx.map_fixture(family_operand(family, "d"), "family.d"));
}

ChernoffFamily resolve_family(const json& family, const ResolvedContext& ctx) {
  if (!family.is_object() || !family.contains("recipe")) {
    config_fail("family", "needs a 'recipe'");
  }
  const std::string recipe = family.at("recipe").get<std::string>();
  if (recipe == "exact_semigroup") {
    return ChernoffFamily::exact_semigroup(
        ctx.map_fixture(family_operand(family, "operator"), "family.operator"));
  }
  if (recipe == "implicit_euler") {
    return ChernoffFamily::implicit_euler(
        ctx.map_fixture(family_operand(family, "operator"), "family.operator"));
  }
  if (recipe == "lie_trotter") {
    const SplitPair split = resolve_split(family, ctx);
    return ChernoffFamily::lie_trotter(split.c, split.d);
  }
  if (recipe == "strang") {
    const SplitPair split = resolve_split(family, ctx);
    return ChernoffFamily::strang(split.c, split.d);
  }
  if (recipe == "affine_scalar") {
    // F(t) = (1 + rate t) I with generator rate I.
    if (!family.contains("rate")) config_fail("family.rate", "required for affine_scalar");
    const double rate = family.at("rate").get<double>();
    const int dim = family.value("dim", 1);
    if (dim < 1) config_fail("family.dim", "must be >= 1");
    const LinearMap gen = rate * LinearMap::identity(dim);
    return ChernoffFamily::custom(
        [rate, dim](double t) { return (1.0 + rate * t) * LinearMap::identity(dim); },
        GeneratorSpec{gen, "affine_scalar rate"}, "affine_scalar");
  }
  config_fail("family.recipe", "unknown recipe '" + recipe + "'");
}

VectorState resolve_initial_state(const json& block, Eigen::Index dim, std::uint64_t seed) {
  if (block.is_null() || block.empty()) {
    return VectorState(Eigen::VectorXcd::Ones(dim), Field::Real);
  }
  const std::string kind = block.value("kind", "ones");
  VectorState state = VectorState::zero(dim);
  if (kind == "ones") {
    state = VectorState(Eigen::VectorXcd::Ones(dim), Field::Real);
  } else if (kind == "basis") {
    const auto index = block.value("index", 0);
    if (index < 0 || index >= dim) config_fail("initial_state.index", "out of range");
    state = VectorState::basis(dim, index);
  } else if (kind == "samples") {
    if (!block.contains("values")) config_fail("initial_state.values", "required");
    std::vector<Complex> values;
    for (const auto& item : block.at("values")) {
      if (item.is_number()) {
        values.emplace_back(item.get<double>(), 0.0);
      } else if (item.is_array() && item.size() == 2) {
        values.emplace_back(item.at(0).get<double>(), item.at(1).get<double>());
      } else {
        config_fail("initial_state.values", "entries must be numbers or [re, im] pairs");
      }
    }
    if (static_cast<Eigen::Index>(values.size()) != dim) {
      config_fail("initial_state.values", "length must equal the family dimension");
    }
    state = VectorState::from_complex(values);
  } else if (kind == "random") {
    state = random_state(static_cast<int>(dim), block.value("seed", seed));
  } else {
    config_fail("initial_state.kind", "unknown kind '" + kind + "'");
  }
  if (block.value("normalize", false)) {
    const double n = state.norm();
    if (n == 0.0) config_fail("initial_state", "cannot normalize the zero state");
    state = (1.0 / n) * state;
  }
  return state;
}

CertGrid resolve_grid(const json& block) {
  if (!block.contains("grid")) return CertGrid::default_grid();
  const json& grid = block.at("grid");
  return CertGrid(parse_int_list(grid.value("n", json::array()), "grid.n"),
                  parse_int_list(grid.value("m", json::array()), "grid.m"),
                  parse_real_list(grid.value("s", json::array()), "grid.s"));
}

// Evaluates fn(i) for i in [0, count) on up to `jobs` concurrent workers;
// results land by index, so assembly order is deterministic.
template <typename Fn>
void parallel_for_index(size_t count, int jobs, Fn&& fn) {
  if (jobs <= 1 || count <= 1) {
    for (size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<size_t> next{0};
  auto worker = [&]() {
    for (size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
  };
  std::vector<std::future<void>> workers;
  const int worker_count = std::min<int>(jobs, static_cast<int>(count));
  workers.reserve(static_cast<size_t>(worker_count));
  for (int w = 0; w < worker_count; ++w) {
    workers.push_back(std::async(std::launch::async, worker));
  }
  for (auto& w : workers) w.get();
}

// ---------------------------------------------------------------------------
// Assertion helpers.

struct AssertionSink {
  const json& assertions;
  std::vector<std::string>& failures;

  void check_order_window(const ConvergenceReport& report, const std::string& prefix) {
    const std::string min_key = prefix.empty() ? "order_min" : prefix + "_order_min";
    const std::string max_key = prefix.empty() ? "order_max" : prefix + "_order_max";
    if (assertions.contains(min_key) &&
        !(report.fitted_order >= assertions.at(min_key).get<double>())) {
      failures.push_back(min_key + ": fitted order " + format_double(report.fitted_order) +
                         " below " + format_double(assertions.at(min_key).get<double>()));
    }
    if (assertions.contains(max_key) &&
        !(report.fitted_order <= assertions.at(max_key).get<double>())) {
      failures.push_back(max_key + ": fitted order " + format_double(report.fitted_order) +
                         " above " + format_double(assertions.at(max_key).get<double>()));
    }
    if (assertions.contains("max_final_error") && prefix.empty() &&
        !(report.errors.back() <= assertions.at("max_final_error").get<double>())) {
      failures.push_back("max_final_error: final error " + format_double(report.errors.back()));
    }
  }
};

}  // namespace

// ---------------------------------------------------------------------------
// Parsing

ExperimentConfig parse_experiment_config(const json& doc) {
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  if (!doc.contains("kind")) config_fail("kind", "required");

  ExperimentConfig config;
  config.kind = parse_kind(doc.at("kind").get<std::string>());
  config.seed = doc.value("seed", std::uint64_t{0});

  if (doc.contains("fixtures")) {
    if (!doc.at("fixtures").is_object()) config_fail("fixtures", "must be an object");
    for (const auto& [name, block] : doc.at("fixtures").items()) {
      ParsedFixture parsed = parse_fixture(block, "fixtures." + name);
      if (parsed.uses_experiment_seed) {
        parsed.descriptor.seed = config.seed ^ fnv1a(name);
      }
      config.fixtures.emplace(name, std::move(parsed.descriptor));
    }
  }

  if (!doc.contains("family")) config_fail("family", "required");
  config.family = doc.at("family");
  config.initial_state = doc.value("initial_state", json::object());

  config.parameters = doc.value(kind_name(config.kind), json::object());
  config.assertions = doc.value("assertions", json::object());

  // Eager validation of the pieces that do not need heavy computation, so a
  // bad config fails before any work starts.
  {
    ResolvedContext ctx{config.fixtures};
    const ChernoffFamily family = resolve_family(config.family, ctx);
    resolve_initial_state(config.initial_state, family.dim(), config.seed);
  }

  switch (config.kind) {
    case ExperimentKind::stability: {
      resolve_grid(config.parameters);
      require_positive(config.parameters, "tol", 1e-10);
      if (config.parameters.contains("bound")) {
        const json& bound = config.parameters.at("bound");
        const double m = bound.value("M", 1.0);
        if (!(m >= 1.0)) config_fail("stability.bound.M", "must be >= 1");
        if (!bound.contains("a")) config_fail("stability.bound.a", "required");
      }
      break;
    }
    case ExperimentKind::evolve: {
      require_positive(config.parameters, "t", 1.0);
      if (!config.parameters.contains("n_list")) config_fail("evolve.n_list", "required");
      const auto n_list = parse_int_list(config.parameters.at("n_list"), "evolve.n_list");
      if (n_list.size() < 3) config_fail("evolve.n_list", "needs at least 3 entries");
      break;
    }
    case ExperimentKind::cauchy: {
      require_positive(config.parameters, "horizon", 1.0);
      require_positive(config.parameters, "tol", 1e-6);
      if (!config.parameters.contains("s_grid")) config_fail("cauchy.s_grid", "required");
      parse_real_list(config.parameters.at("s_grid"), "cauchy.s_grid");
      if (!config.parameters.contains("n_schedule")) config_fail("cauchy.n_schedule", "required");
      parse_int_list(config.parameters.at("n_schedule"), "cauchy.n_schedule");
      break;
    }
    case ExperimentKind::trotter: {
      require_positive(config.parameters, "s", 1.0);
      if (!config.parameters.contains("n_list")) config_fail("trotter.n_list", "required");
      parse_int_list(config.parameters.at("n_list"), "trotter.n_list");
      if (config.family.value("recipe", "") != "lie_trotter") {
        config_fail("family.recipe", "kind=trotter requires the lie_trotter recipe");
      }
      break;
    }
    case ExperimentKind::criteria: {
      if (!config.parameters.contains("s_values")) config_fail("criteria.s_values", "required");
      parse_real_list(config.parameters.at("s_values"), "criteria.s_values");
      if (!config.parameters.contains("n_list")) config_fail("criteria.n_list", "required");
      parse_int_list(config.parameters.at("n_list"), "criteria.n_list");
      require_positive(config.parameters, "tol", 1e-3);
      break;
    }
    case ExperimentKind::lemmas: {
      require_positive(config.parameters, "t", 1.0);
      break;
    }
  }

  if (doc.contains("output")) {
    if (!doc.at("output").is_object()) config_fail("output", "must be an object");
    for (const auto& [name, value] : doc.at("output").items()) {
      config.outputs[name] = value.get<std::string>();
    }
  }
  return config;
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& err) {
    throw ConfigError("JSON parse error in " + path.string() + ": " + err.what());
  }
  try {
    return parse_experiment_config(doc);
  } catch (const json::exception& err) {
    throw ConfigError("config error in " + path.string() + ": " + err.what());
  }
}

// ---------------------------------------------------------------------------
// Running

ExperimentOutcome run_experiment(const ExperimentConfig& config, const RunOptions& options) {
  ExperimentOutcome outcome;
  const json& params = config.parameters;
  const json& assertions = config.assertions;
  AssertionSink sink{assertions, outcome.failures};

  // Apply the seed override to fixtures that follow the experiment seed.
  std::map<std::string, FixtureDescriptor> fixtures = config.fixtures;
  if (options.seed_override) {
    // Re-derive: descriptors seeded from the experiment seed were tagged by
    // XOR with the name hash at parse time; recompute with the override.
    for (auto& [name, descriptor] : fixtures) {
      if (descriptor.seed == (config.seed ^ fnv1a(name))) {
        descriptor.seed = *options.seed_override ^ fnv1a(name);
      }
    }
  }
  ResolvedContext ctx{std::move(fixtures)};
  const ChernoffFamily family = resolve_family(config.family, ctx);
  const std::uint64_t seed = options.seed_override.value_or(config.seed);

  json initial_doc = json::object();
  initial_doc["initial_state"] = params.value("__initial_state", json::object());
  const VectorState x0 = resolve_initial_state(initial_doc, family.dim(), seed);

  auto output_path = [&](const char* logical, const std::string& fallback) {
    auto it = config.outputs.find(logical);
    return options.out_dir / (it != config.outputs.end() ? it->second : fallback);
  };
  auto write_report = [&](const std::filesystem::path& path, const std::string& contents) {
    atomic_write(path, contents);
    outcome.written.push_back(path);
  };
  auto maybe_plot = [&](const std::filesystem::path& csv) {
    auto it = config.outputs.find("plot");
    if (it == config.outputs.end()) return;
    const auto script = options.out_dir / it->second;
    emit_plot_script(csv, script);
    outcome.written.push_back(script);
  };

  switch (config.kind) {
    case ExperimentKind::stability: {
      const CertGrid grid = resolve_grid(params);
      const double tol = params.value("tol", 1e-10);
      GrowthBound bound = params.contains("bound")
                              ? GrowthBound(params.at("bound").value("M", 1.0),
                                            params.at("bound").at("a").get<double>())
                              : estimate_growth_bound(family, grid);
      const ViolationReport report = verify_growth_bound(family, bound, grid, tol);

      const auto csv = output_path("csv", "stability.csv");
      write_report(csv, violation_csv(report));
      maybe_plot(csv);

      const std::string expect = assertions.value("expect", "pass");
      if (expect == "pass" && !report.passed) {
        outcome.failures.push_back("expect=pass but " + std::to_string(report.violations.size()) +
                                   " grid points violate the bound (max ratio " +
                                   format_double(report.max_ratio) + ")");
      } else if (expect == "fail" && report.passed) {
        outcome.failures.push_back("expect=fail but the bound holds on the whole grid");
      }
      break;
    }

    case ExperimentKind::evolve: {
      const double t = params.value("t", 1.0);
      const auto n_list = parse_int_list(params.at("n_list"), "evolve.n_list");
      const VectorState reference =
          apply(matrix_exponential(t * family.generator().map), x0);

      std::vector<double> errors(n_list.size(), 0.0);
      parallel_for_index(n_list.size(), options.jobs, [&](size_t i) {
        errors[i] = distance(product_power(family, t, n_list[i], x0), reference);
      });
      const ConvergenceReport report = make_convergence_report(n_list, std::move(errors));

      const auto csv = output_path("csv", "convergence.csv");
      write_report(csv, convergence_csv(report, family.is_extension()));
      maybe_plot(csv);

      sink.check_order_window(report, "");
      if (assertions.value("expect_exact", false) && !report.exact) {
        outcome.failures.push_back("expect_exact: errors exceed the roundoff floor");
      }
      break;
    }

    case ExperimentKind::cauchy: {
      const double horizon = params.value("horizon", 1.0);
      const double tol = params.value("tol", 1e-6);
      const auto s_grid = parse_real_list(params.at("s_grid"), "cauchy.s_grid");
      const auto schedule = parse_int_list(params.at("n_schedule"), "cauchy.n_schedule");
      const CauchyProblem problem{family.generator(), x0, horizon};

      try {
        SolutionCertificate cert = solve_via_chernoff(family, problem, s_grid, tol, schedule);
        cert.residuals["semigroup_law(h/2,h/2)"] =
            semigroup_law_check(family, horizon / 2, horizon / 2, x0, cert.n_used);
        cert.residuals["derivative_representation_max"] =
            derivative_representation_check(family, problem, s_grid, cert.n_used).max_residual;
        const auto path = output_path("json", "certificate.json");
        write_report(path, certificate_json(cert, family.name()));
      } catch (const ToleranceNotReached& err) {
        if (assertions.value("require_converged", true)) {
          outcome.failures.push_back(std::string("require_converged: ") + err.what());
        }
      }
      break;
    }

    case ExperimentKind::trotter: {
      const double s = params.value("s", 1.0);
      const auto n_list = parse_int_list(params.at("n_list"), "trotter.n_list");
      const bool with_strang = params.value("with_strang", false);
      const SplitPair split = resolve_split(config.family, ctx);

      const VectorState reference = apply(matrix_exponential(s * (split.c + split.d)), x0);
      std::vector<double> lie_errors(n_list.size(), 0.0);
      std::vector<double> strang_errors(n_list.size(), 0.0);
      const ChernoffFamily strang_family = ChernoffFamily::strang(split.c, split.d);
      parallel_for_index(n_list.size(), options.jobs, [&](size_t i) {
        lie_errors[i] = distance(trotter_apply(split, s, n_list[i], x0), reference);
        if (with_strang) {
          strang_errors[i] =
              distance(product_power(strang_family, s, n_list[i], x0), reference);
        }
      });

      const ConvergenceReport lie = make_convergence_report(n_list, std::move(lie_errors));
      const auto csv = output_path("csv", "trotter.csv");
      write_report(csv, convergence_csv(lie, /*extension=*/false));

      if (with_strang) {
        const ConvergenceReport strang = make_convergence_report(n_list, std::move(strang_errors));
        auto strang_csv = csv;
        strang_csv.replace_extension(".strang.csv");
        write_report(strang_csv, convergence_csv(strang, /*extension=*/true));
        sink.check_order_window(strang, "strang");
      }
      maybe_plot(csv);
      sink.check_order_window(lie, "");
      break;
    }

    case ExperimentKind::criteria: {
      const auto s_values = parse_real_list(params.at("s_values"), "criteria.s_values");
      const auto n_list = parse_int_list(params.at("n_list"), "criteria.n_list");
      const double tol = params.value("tol", 1e-3);

      // The exact solution as the candidate rule (the natural choice when
      // the generator is known; library callers may pass any rule).
      const LinearMap& z = family.generator().map;
      const CandidateRule candidate = [&z, &x0](double s, int) {
        return apply(matrix_exponential(s * z), x0);
      };
      const ApproxSequenceReport report =
          approximation_sequence_check(family, x0, s_values, n_list, candidate, tol);

      const auto csv = output_path("csv", "criteria.csv");
      write_report(csv, criteria_csv(report));
      maybe_plot(csv);

      if (assertions.value("expect_all_pass", true)) {
        for (size_t si = 0; si < report.s_values.size(); ++si) {
          if (!report.verdicts[si]) {
            outcome.failures.push_back("criteria verdict failed at s = " +
                                       format_double(report.s_values[si]));
          }
        }
      }
      break;
    }

    case ExperimentKind::lemmas: {
      const double t = params.value("t", 1.0);
      const SmallStepReport small_step =
          small_step_limit_check(family, t, x0, default_small_step_pairs());
      const DifferenceQuotientReport quotient =
          difference_quotient_check(family, t, x0, default_difference_quotient_triples());

      const auto csv = output_path("csv", "lemmas.csv");
      write_report(csv, lemma_csv(small_step, quotient));

      if (assertions.value("require_non_increasing", true)) {
        if (!small_step.non_increasing) {
          outcome.failures.push_back("small-step bucket maxima increased");
        }
        if (!quotient.non_increasing) {
          outcome.failures.push_back("difference-quotient bucket maxima increased");
        }
      }
      break;
    }
  }

  outcome.exit_code = outcome.failures.empty() ? 0 : 1;
  return outcome;
}

// ---------------------------------------------------------------------------
// Plot scripts

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream stream(line);
  while (std::getline(stream, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.push_back("");
  return fields;
}

}  // namespace

void emit_plot_script(const std::filesystem::path& report_csv,
                      const std::filesystem::path& script_path) {
  std::ifstream in(report_csv);
  if (!in) throw FormatError("emit_plot_script: cannot open " + report_csv.string());
  std::string header_line;
  if (!std::getline(in, header_line)) {
    throw FormatError("emit_plot_script: " + report_csv.string() + " is empty");
  }
  const auto header = split_csv_line(header_line);
  auto has_columns = [&](std::initializer_list<const char*> names) {
    for (const char* name : names) {
      if (std::find(header.begin(), header.end(), name) == header.end()) return false;
    }
    return true;
  };

  int data_rows = 0;
  for (std::string line; std::getline(in, line);) {
    if (!line.empty()) ++data_rows;
  }

  std::ostringstream script;
  script << "# generated by semigroup-lab plot\n";
  script << "set datafile separator comma\n";
  script << "set datafile columnheaders\n";
  if (data_rows == 0) {
    std::cerr << "warning: " << report_csv.string() << " has no data rows; plot will be empty\n";
    script << "# warning: report has no data rows\n";
  }

  const std::string file = report_csv.filename().string();
  if (has_columns({"n", "error", "local_order"})) {
    script << "set logscale xy\nset xlabel 'n'\nset ylabel 'error'\n";
    auto sibling = report_csv;
    sibling.replace_extension(".strang.csv");
    script << "plot '" << file << "' using \"n\":\"error\" with linespoints title '"
           << report_csv.stem().string() << "'";
    if (std::filesystem::exists(sibling)) {
      script << ", \\\n     '" << sibling.filename().string()
             << "' using \"n\":\"error\" with linespoints title 'strang (extension)'";
    }
    script << "\n";
  } else if (has_columns({"n", "m", "s", "lhs_norm", "rhs_bound", "ratio"})) {
    script << "set logscale y\nset xlabel 'm*s/n'\nset ylabel 'ratio'\n";
    script << "plot '" << file
           << "' using (column(\"m\")*column(\"s\")/column(\"n\")):(column(\"ratio\"))"
           << " with points title 'lhs/rhs'\n";
  } else if (has_columns({"s", "n", "distance", "Z_norm", "verdict"})) {
    script << "set logscale xy\nset xlabel 'n'\nset ylabel 'distance'\n";
    script << "plot '" << file << "' using \"n\":\"distance\" with points title 'distance'\n";
  } else if (has_columns({"kind", "i", "l", "k", "ratio", "value"})) {
    script << "set logscale xy\nset xlabel 'ratio'\nset ylabel 'value'\n";
    script << "plot '" << file << "' using \"ratio\":\"value\" with points title 'residual'\n";
  } else {
    throw FormatError("emit_plot_script: unrecognized report columns in " + report_csv.string());
  }

  atomic_write(script_path, script.str());
}

}  // namespace semigroup_lab
