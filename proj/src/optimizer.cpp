#include <cmath>
#include <set>

#include "cbo/algorithms.hpp"

namespace cbo {

using nlohmann::json;

std::string_view to_string(StepSchedule s) {
  switch (s) {
    case StepSchedule::kConstant: return "constant";
    case StepSchedule::kInverseSqrt: return "inverse_sqrt";
    case StepSchedule::kInverse: return "inverse";
  }
  return "?";
}

StepSchedule parse_schedule(std::string_view name) {
  if (name == "constant") return StepSchedule::kConstant;
  if (name == "inverse_sqrt") return StepSchedule::kInverseSqrt;
  if (name == "inverse") return StepSchedule::kInverse;
  throw ConfigError("unknown step schedule '" + std::string(name) +
                    "' (expected constant, inverse_sqrt or inverse)");
}

double step_size(StepSchedule schedule, double alpha0, std::int64_t k) {
  const double kk = static_cast<double>(k);
  switch (schedule) {
    case StepSchedule::kConstant: return alpha0;
    case StepSchedule::kInverseSqrt: return alpha0 / std::sqrt(kk + 1.0);
    case StepSchedule::kInverse: return alpha0 / (kk + 1.0);
  }
  return alpha0;
}

void StpConfig::validate() const {
  if (!(alpha0 > 0.0)) throw ConfigError("stp: alpha0 must be positive");
}

void GldConfig::validate() const {
  if (!(r > 0.0) || !(R > r)) throw ConfigError("gld: need 0 < r < R");
}

int GldConfig::K() const {
  validate();
  // The tolerance keeps exact powers of two (R/r = 16 -> K = 4) from rounding up.
  const double k = std::ceil(std::log2(R / r) - 1e-9);
  return std::max(1, static_cast<int>(k));
}

void SignOptConfig::validate() const {
  if (m < 1) throw ConfigError("signopt: m must be at least 1");
  if (!(r > 0.0)) throw ConfigError("signopt: r must be positive");
  if (!(alpha0 > 0.0)) throw ConfigError("signopt: alpha0 must be positive");
}

void ScoboConfig::validate() const {
  if (m < 1) throw ConfigError("scobo: m must be at least 1");
  if (s < 1) throw ConfigError("scobo: s must be at least 1");
  if (!(r > 0.0)) throw ConfigError("scobo: r must be positive");
  if (!(delta > 0.0)) throw ConfigError("scobo: delta must be positive");
}

void CmaConfig::validate() const {
  if (!(sigma0 > 0.0)) throw ConfigError("cma: sigma0 must be positive");
  if (lambda != 0 && lambda < 2) throw ConfigError("cma: lambda must be 0 (default) or >= 2");
}

namespace {

double get_real(const json& params, const char* key) {
  const json& v = params.at(key);
  if (!v.is_number()) throw ConfigError(std::string("parameter '") + key + "' must be a number");
  return v.get<double>();
}

int get_int(const json& params, const char* key) {
  const double v = get_real(params, key);
  if (v != std::floor(v) || std::abs(v) > 1e9)
    throw ConfigError(std::string("parameter '") + key + "' must be an integer");
  return static_cast<int>(v);
}

std::string get_string(const json& params, const char* key) {
  const json& v = params.at(key);
  if (!v.is_string()) throw ConfigError(std::string("parameter '") + key + "' must be a string");
  return v.get<std::string>();
}

StpConfig stp_from(const json& p) {
  StpConfig c;
  c.alpha0 = get_real(p, "alpha0");
  c.decay = parse_schedule(get_string(p, "decay"));
  c.dist = parse_distribution(get_string(p, "dist"));
  c.validate();
  return c;
}

GldConfig gld_from(const json& p) {
  GldConfig c;
  c.R = get_real(p, "R");
  c.r = get_real(p, "r");
  c.dist = parse_distribution(get_string(p, "dist"));
  c.validate();
  return c;
}

SignOptConfig signopt_from(const json& p) {
  SignOptConfig c;
  c.m = get_int(p, "m");
  c.r = get_real(p, "r");
  c.alpha0 = get_real(p, "alpha0");
  c.decay = parse_schedule(get_string(p, "decay"));
  c.validate();
  return c;
}

ScoboConfig scobo_from(const json& p) {
  ScoboConfig c;
  c.m = get_int(p, "m");
  c.s = get_int(p, "s");
  c.r = get_real(p, "r");
  c.delta = get_real(p, "delta");
  c.validate();
  return c;
}

CmaConfig cma_from(const json& p) {
  CmaConfig c;
  c.sigma0 = get_real(p, "sigma0");
  c.lambda = get_int(p, "lambda");
  c.validate();
  return c;
}

// Wrappers binding a free step function and its config to the Optimizer interface.

class StpOptimizer final : public Optimizer {
 public:
  StpOptimizer(StpConfig c, const Point& x0) : config_(c) { state_.x = x0; }
  void step(ComparisonOracle& o, Rng& rng) override { state_ = stp_step(std::move(state_), config_, o, rng); }
  const OptimizerState& state() const override { return state_; }
  std::int64_t max_queries_per_step() const override { return 2; }
  std::string_view name() const override { return "stp"; }

 private:
  StpConfig config_;
  OptimizerState state_;
};

class GldOptimizer final : public Optimizer {
 public:
  GldOptimizer(GldConfig c, const Point& x0) : config_(c) { state_.x = x0; }
  void step(ComparisonOracle& o, Rng& rng) override { state_ = gld_step(std::move(state_), config_, o, rng); }
  const OptimizerState& state() const override { return state_; }
  std::int64_t max_queries_per_step() const override { return config_.K() + 1; }
  std::string_view name() const override { return "gld"; }

 private:
  GldConfig config_;
  OptimizerState state_;
};

class SignOptOptimizer final : public Optimizer {
 public:
  SignOptOptimizer(SignOptConfig c, const Point& x0) : config_(c) { state_.x = x0; }
  void step(ComparisonOracle& o, Rng& rng) override { state_ = signopt_step(std::move(state_), config_, o, rng); }
  const OptimizerState& state() const override { return state_; }
  std::int64_t max_queries_per_step() const override { return config_.m; }
  std::string_view name() const override { return "signopt"; }

 private:
  SignOptConfig config_;
  OptimizerState state_;
};

class ScoboOptimizer final : public Optimizer {
 public:
  ScoboOptimizer(ScoboConfig c, const Point& x0) : config_(c) { state_.x = x0; }
  void step(ComparisonOracle& o, Rng& rng) override { state_ = scobo_step(std::move(state_), config_, o, rng); }
  const OptimizerState& state() const override { return state_; }
  std::int64_t max_queries_per_step() const override { return config_.m; }
  std::string_view name() const override { return "scobo"; }

 private:
  ScoboConfig config_;
  OptimizerState state_;
};

class CmaOptimizer final : public Optimizer {
 public:
  CmaOptimizer(const CmaConfig& c, const Point& x0) : state_(cma_init(x0, c)) {}
  void step(ComparisonOracle& o, Rng& rng) override { state_ = cma_step(std::move(state_), o, rng); }
  const OptimizerState& state() const override { return state_; }
  std::int64_t max_queries_per_step() const override {
    const std::int64_t l = state_.lambda;
    return l * (l - 1) / 2;
  }
  std::string_view name() const override { return "cma"; }

 private:
  CmaState state_;
};

}  // namespace

const std::vector<std::string>& algorithm_names() {
  static const std::vector<std::string> names{"stp", "gld", "cma", "signopt", "scobo"};
  return names;
}

json default_params(std::string_view algorithm) {
  if (algorithm == "stp") {
    const StpConfig c;
    return {{"alpha0", c.alpha0}, {"decay", to_string(c.decay)}, {"dist", to_string(c.dist)}};
  }
  if (algorithm == "gld") {
    const GldConfig c;
    return {{"R", c.R}, {"r", c.r}, {"dist", to_string(c.dist)}};
  }
  if (algorithm == "cma") {
    const CmaConfig c;
    return {{"sigma0", c.sigma0}, {"lambda", c.lambda}};
  }
  if (algorithm == "signopt") {
    const SignOptConfig c;
    return {{"m", c.m}, {"r", c.r}, {"alpha0", c.alpha0}, {"decay", to_string(c.decay)}};
  }
  if (algorithm == "scobo") {
    const ScoboConfig c;
    return {{"m", c.m}, {"s", c.s}, {"r", c.r}, {"delta", c.delta}};
  }
  throw ConfigError("unknown algorithm '" + std::string(algorithm) +
                    "' (expected stp, gld, cma, signopt or scobo)");
}

AlgorithmSpec resolve_spec(const AlgorithmSpec& spec) {
  json merged = default_params(spec.name);
  if (!spec.params.is_null() && !spec.params.is_object())
    throw ConfigError(spec.name + ": parameters must be a JSON object");
  if (spec.params.is_object()) {
    for (const auto& [key, value] : spec.params.items()) {
      if (!merged.contains(key))
        throw ConfigError(spec.name + " has no parameter '" + key + "'");
      merged[key] = value;
    }
  }
  AlgorithmSpec out{spec.name, merged};
  // Parse once so type and range errors surface here, before any run.
  if (spec.name == "stp") stp_from(merged);
  else if (spec.name == "gld") gld_from(merged);
  else if (spec.name == "cma") cma_from(merged);
  else if (spec.name == "signopt") signopt_from(merged);
  else if (spec.name == "scobo") scobo_from(merged);
  return out;
}

std::unique_ptr<Optimizer> make_optimizer(const AlgorithmSpec& spec, const Point& x0) {
  const AlgorithmSpec r = resolve_spec(spec);
  if (r.name == "stp") return std::make_unique<StpOptimizer>(stp_from(r.params), x0);
  if (r.name == "gld") return std::make_unique<GldOptimizer>(gld_from(r.params), x0);
  if (r.name == "cma") return std::make_unique<CmaOptimizer>(cma_from(r.params), x0);
  if (r.name == "signopt") return std::make_unique<SignOptOptimizer>(signopt_from(r.params), x0);
  ScoboConfig c = scobo_from(r.params);
  c.s = std::min<int>(c.s, static_cast<int>(x0.size()));
  return std::make_unique<ScoboOptimizer>(c, x0);
}

}  // namespace cbo
