//
// Copyright 2026 The Test-of-Tests Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "tot/tot.h"

#include <exception>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "src/csv.h"
#include "src/dataset.h"
#include "src/optimizer.h"
#include "src/power_analysis.h"
#include "src/public_tests.h"
#include "src/sim_harness.h"
#include "src/test_of_tests.h"

struct tot_dataset {
  tot::Dataset data;
};

struct tot_test {
  std::unique_ptr<tot::PublicTest> test;
};

namespace {

thread_local std::string g_last_error;

tot_status Fail(tot_status code, std::string message) {
  g_last_error = std::move(message);
  return code;
}

tot_status FromStatus(const absl::Status& s) {
  if (s.ok()) {
    g_last_error.clear();
    return TOT_OK;
  }
  tot_status code = TOT_INTERNAL;
  switch (s.code()) {
    case absl::StatusCode::kInvalidArgument:
      code = TOT_INVALID_ARGUMENT;
      break;
    case absl::StatusCode::kOutOfRange:
      code = TOT_OUT_OF_RANGE;
      break;
    case absl::StatusCode::kNotFound:
      code = TOT_NOT_FOUND;
      break;
    case absl::StatusCode::kFailedPrecondition:
      code = TOT_FAILED_PRECONDITION;
      break;
    case absl::StatusCode::kUnimplemented:
      code = TOT_UNIMPLEMENTED;
      break;
    default:
      break;
  }
  return Fail(code, std::string(s.message()));
}

// Runs body, translating exceptions into TOT_INTERNAL so none cross the C
// boundary.
template <typename Body>
tot_status Guard(Body&& body) {
  try {
    return body();
  } catch (const std::exception& e) {
    return Fail(TOT_INTERNAL, absl::StrCat("internal error: ", e.what()));
  } catch (...) {
    return Fail(TOT_INTERNAL, "internal error");
  }
}

#define TOT_C_REQUIRE(cond, what) \
  if (!(cond)) return Fail(TOT_INVALID_ARGUMENT, what)

absl::StatusOr<tot::EffectSpec> ToEffect(const tot_effect* e) {
  if (e == nullptr) return absl::InvalidArgumentError("effect is null");
  switch (e->kind) {
    case TOT_EFFECT_MEAN:
      return tot::EffectSpec(tot::StandardizedMean{e->value});
    case TOT_EFFECT_ANOVA:
      return tot::EffectSpec(tot::AnovaEffect{e->value, e->groups});
    case TOT_EFFECT_VECTOR:
      if (e->mu == nullptr || e->dim == 0) {
        return absl::InvalidArgumentError("mean vector is empty");
      }
      return tot::EffectSpec(tot::MeanVector{std::vector<double>(e->mu, e->mu + e->dim)});
  }
  return absl::InvalidArgumentError("unknown effect kind");
}

tot::TestFamily ToFamily(tot_test_family f) {
  switch (f) {
    case TOT_TEST_Z:
      return tot::TestFamily::kZ;
    case TOT_TEST_T:
      return tot::TestFamily::kT;
    case TOT_TEST_ANOVA:
      return tot::TestFamily::kAnova;
    case TOT_TEST_MVN_MEAN:
      return tot::TestFamily::kMvnMean;
  }
  return tot::TestFamily::kZ;
}

bool ValidFamily(int f) { return f >= TOT_TEST_Z && f <= TOT_TEST_MVN_MEAN; }

void FillOptimizerResult(const tot::OptimizerResult& r,
                         tot_optimizer_result* out, tot_candidate* certs,
                         std::size_t capacity) {
  out->m = r.m;
  out->alpha0 = r.alpha0;
  out->theta = r.theta;
  out->achieved_power = r.achieved_power;
  out->degenerate = r.degenerate ? 1 : 0;
  out->target_reached = r.target_reached ? 1 : 0;
  out->has_min_detectable = r.min_detectable_effect.has_value() ? 1 : 0;
  out->min_detectable_index = 0;
  out->min_detectable_scale = 0.0;
  out->num_certificates = r.certificates.size();
  if (certs != nullptr) {
    for (std::size_t i = 0; i < r.certificates.size() && i < capacity; ++i) {
      const auto& c = r.certificates[i];
      certs[i] = tot_candidate{c.m, c.alpha0, c.theta, c.power};
    }
  }
}

absl::StatusOr<tot::SimPlan> ToPlan(const tot_sim_plan* p) {
  if (p == nullptr) return absl::InvalidArgumentError("plan is null");
  tot::SimPlan plan;
  const tot_generator& g = p->generator;
  if (g.family < TOT_GEN_NORMAL || g.family > TOT_GEN_PVALUE_MIXTURE) {
    return absl::InvalidArgumentError("unknown generator family");
  }
  plan.generator.family = static_cast<tot::GeneratorFamily>(g.family);
  plan.generator.n = g.n;
  if (g.family != TOT_GEN_PVALUE_MIXTURE) {
    auto effect = ToEffect(&g.effect);
    if (!effect.ok()) return effect.status();
    plan.generator.effect = *effect;
  }
  plan.generator.theta = g.theta;
  plan.generator.mixture_alpha0 = g.mixture_alpha0;
  const tot_engine& e = p->engine;
  if (e.kind < TOT_ENGINE_TOT || e.kind > TOT_ENGINE_PB) {
    return absl::InvalidArgumentError("unknown engine");
  }
  if (e.test == nullptr) return absl::InvalidArgumentError("engine test is null");
  plan.engine.kind = static_cast<tot::EngineKind>(e.kind);
  plan.engine.test = e.test->test.get();
  plan.engine.epsilon = e.epsilon;
  plan.engine.alpha = e.alpha;
  plan.engine.m = e.m;
  plan.engine.alpha0 = e.alpha0;
  plan.engine.pb_keep_probability = e.pb_keep_probability;
  plan.replicates = p->replicates;
  plan.seed = p->seed;
  plan.threads = p->threads;
  return plan;
}

}  // namespace

extern "C" {

const char* tot_version(void) { return "0.1.0"; }

const char* tot_last_error(void) { return g_last_error.c_str(); }

tot_status tot_parse_test_family(const char* name, tot_test_family* out) {
  TOT_C_REQUIRE(name != nullptr && out != nullptr, "null argument");
  return Guard([&] {
    auto f = tot::ParseTestFamily(name);
    if (!f.ok()) return FromStatus(f.status());
    *out = static_cast<tot_test_family>(*f);
    return TOT_OK;
  });
}

tot_status tot_parse_alternative(const char* name, tot_alternative* out) {
  TOT_C_REQUIRE(name != nullptr && out != nullptr, "null argument");
  return Guard([&] {
    auto a = tot::ParseAlternative(name);
    if (!a.ok()) return FromStatus(a.status());
    *out = static_cast<tot_alternative>(*a);
    return TOT_OK;
  });
}

tot_status tot_dataset_create(const double* values, size_t rows, size_t cols,
                              const int* groups, const char* const* group_names,
                              size_t num_groups, tot_dataset** out) {
  TOT_C_REQUIRE(out != nullptr, "out is null");
  TOT_C_REQUIRE(values != nullptr || rows * cols == 0, "values is null");
  return Guard([&] {
    std::vector<int> g;
    std::vector<std::string> names;
    if (groups != nullptr) {
      g.assign(groups, groups + rows);
      for (size_t k = 0; k < num_groups; ++k) {
        names.emplace_back(group_names != nullptr && group_names[k] != nullptr
                               ? group_names[k]
                               : absl::StrCat("g", k + 1));
      }
    }
    auto d = tot::Dataset::Create(std::vector<double>(values, values + rows * cols),
                                  cols, std::move(g), std::move(names));
    if (!d.ok()) return FromStatus(d.status());
    *out = new tot_dataset{std::move(*d)};
    return TOT_OK;
  });
}

tot_status tot_dataset_read_csv(const char* path, tot_test_family family,
                                tot_dataset** out) {
  TOT_C_REQUIRE(path != nullptr && out != nullptr, "null argument");
  TOT_C_REQUIRE(ValidFamily(family), "unknown test family");
  return Guard([&] {
    auto d = tot::ReadDatasetCsv(path, ToFamily(family));
    if (!d.ok()) return FromStatus(d.status());
    *out = new tot_dataset{std::move(*d)};
    return TOT_OK;
  });
}

tot_status tot_dataset_write_csv(const tot_dataset* data,
                                 tot_test_family family, const char* path) {
  TOT_C_REQUIRE(data != nullptr && path != nullptr, "null argument");
  TOT_C_REQUIRE(ValidFamily(family), "unknown test family");
  return Guard([&] {
    if (std::string(path) == "-") {
      tot::WriteDatasetCsv(std::cout, data->data, ToFamily(family));
      std::cout.flush();
      return std::cout ? TOT_OK : Fail(TOT_INTERNAL, "write to stdout failed");
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) return Fail(TOT_NOT_FOUND, absl::StrCat("cannot write '", path, "'"));
    tot::WriteDatasetCsv(f, data->data, ToFamily(family));
    f.close();
    return f ? TOT_OK : Fail(TOT_INTERNAL, absl::StrCat("write to '", path, "' failed"));
  });
}

size_t tot_dataset_rows(const tot_dataset* data) {
  return data == nullptr ? 0 : data->data.rows();
}

size_t tot_dataset_cols(const tot_dataset* data) {
  return data == nullptr ? 0 : data->data.cols();
}

void tot_dataset_free(tot_dataset* data) { delete data; }

tot_status tot_test_create(tot_test_family family, tot_alternative alternative,
                           int groups, tot_test** out) {
  TOT_C_REQUIRE(out != nullptr, "out is null");
  TOT_C_REQUIRE(ValidFamily(family), "unknown test family");
  TOT_C_REQUIRE(alternative == TOT_ALT_GREATER || alternative == TOT_ALT_TWO_SIDED,
                "unknown alternative");
  return Guard([&] {
    auto t = tot::MakePublicTest(ToFamily(family),
                                 static_cast<tot::Alternative>(alternative), groups);
    if (!t.ok()) return FromStatus(t.status());
    *out = new tot_test{std::move(*t)};
    return TOT_OK;
  });
}

tot_status tot_test_create_pvalue_passthrough(tot_test** out) {
  TOT_C_REQUIRE(out != nullptr, "out is null");
  return Guard([&] {
    *out = new tot_test{std::make_unique<tot::PValuePassThroughTest>()};
    return TOT_OK;
  });
}

void tot_test_free(tot_test* test) { delete test; }

size_t tot_test_min_sample_size(const tot_test* test) {
  return test == nullptr ? 0 : test->test->MinSampleSize();
}

tot_status tot_test_pvalue(const tot_test* test, const tot_dataset* data,
                           double* p, int* available) {
  TOT_C_REQUIRE(test != nullptr && data != nullptr && p != nullptr &&
                    available != nullptr,
                "null argument");
  return Guard([&] {
    if (auto s = test->test->CheckCompatible(data->data); !s.ok()) {
      return FromStatus(s);
    }
    std::optional<double> v;
    if (data->data.rows() >= test->test->MinSampleSize()) {
      v = test->test->PValue(data->data);
    }
    *available = v.has_value() ? 1 : 0;
    *p = v.value_or(1.0);
    return TOT_OK;
  });
}

tot_status tot_test_power(const tot_test* test, size_t n,
                          const tot_effect* effect, double alpha0, double* out) {
  TOT_C_REQUIRE(test != nullptr && out != nullptr, "null argument");
  return Guard([&] {
    auto e = ToEffect(effect);
    if (!e.ok()) return FromStatus(e.status());
    auto p = test->test->Power(n, *e, alpha0);
    if (!p.ok()) return FromStatus(p.status());
    *out = *p;
    return TOT_OK;
  });
}

tot_status tot_run(const tot_dataset* data, const tot_test* test,
                   const tot_config* config, tot_result* out) {
  TOT_C_REQUIRE(data != nullptr && test != nullptr && config != nullptr &&
                    out != nullptr,
                "null argument");
  return Guard([&] {
    tot::ToTConfig c{config->epsilon, config->alpha, config->m, config->alpha0,
                     config->seed};
    auto r = tot::RunTot(data->data, *test->test, c);
    if (!r.ok()) return FromStatus(r.status());
    out->z = r->z;
    out->p_value = r->p_value;
    out->reject = r->reject ? 1 : 0;
    out->subtests_available = r->subtests_available;
    out->n = r->n;
    out->config = *config;
    return TOT_OK;
  });
}

tot_status tot_power(double epsilon, double alpha, size_t m, double alpha0,
                     double theta, double* out) {
  TOT_C_REQUIRE(out != nullptr, "out is null");
  return Guard([&] {
    auto p = tot::TotPower({epsilon, alpha, m, alpha0, theta});
    if (!p.ok()) return FromStatus(p.status());
    *out = *p;
    return TOT_OK;
  });
}

tot_status tot_bn_quantile(double q, size_t m, double alpha0, double epsilon,
                           double* out) {
  TOT_C_REQUIRE(out != nullptr, "out is null");
  return Guard([&] {
    auto v = tot::BnQuantile(q, m, alpha0, epsilon);
    if (!v.ok()) return FromStatus(v.status());
    *out = *v;
    return TOT_OK;
  });
}

tot_status tot_min_m_for_power(double theta, double alpha0, double rho,
                               double alpha, double epsilon, size_t max_m,
                               size_t* out) {
  TOT_C_REQUIRE(out != nullptr, "out is null");
  return Guard([&] {
    auto v = tot::MinMForPower(theta, alpha0, rho, alpha, epsilon,
                               max_m == 0 ? 5000 : max_m);
    if (!v.ok()) return FromStatus(v.status());
    *out = *v;
    return TOT_OK;
  });
}

tot_status tot_pb_power(size_t m, double p, double theta, double* out) {
  TOT_C_REQUIRE(out != nullptr, "out is null");
  return Guard([&] {
    auto v = tot::PbPower(m, p, theta);
    if (!v.ok()) return FromStatus(v.status());
    *out = *v;
    return TOT_OK;
  });
}

double tot_randomized_response_keep_probability(double epsilon) {
  return tot::RandomizedResponseKeepProbability(epsilon);
}

tot_status tot_pb_dominance_check(size_t m, double alpha0, double epsilon,
                                  double alpha, const double* thetas,
                                  size_t count, int* dominates,
                                  tot_pb_row* rows) {
  TOT_C_REQUIRE(dominates != nullptr, "dominates is null");
  TOT_C_REQUIRE(thetas != nullptr || count == 0, "thetas is null");
  return Guard([&] {
    auto cmp = tot::ComparePb(m, alpha0, epsilon, alpha,
                              std::vector<double>(thetas, thetas + count));
    if (!cmp.ok()) return FromStatus(cmp.status());
    *dominates = cmp->tot_dominates ? 1 : 0;
    if (rows != nullptr) {
      for (size_t i = 0; i < count; ++i) {
        const auto& r = cmp->rows[i];
        rows[i] = tot_pb_row{r.theta, r.tot_power, r.pb_power, r.pb_raw_power};
      }
    }
    return TOT_OK;
  });
}

tot_status tot_canonne_threshold(size_t d, double epsilon, double delta,
                                 double* out) {
  TOT_C_REQUIRE(out != nullptr, "out is null");
  return Guard([&] {
    tot::CanonneQuery q{1, d, epsilon, delta, 0.1};
    if (auto s = q.Validate(); !s.ok()) return FromStatus(s);
    *out = tot::CanonneAlwaysRejectThreshold(d, epsilon, delta);
    return TOT_OK;
  });
}

tot_status tot_canonne_type1_lower_bound(size_t n, size_t d, double epsilon,
                                         double delta, double gamma,
                                         double* out) {
  TOT_C_REQUIRE(out != nullptr, "out is null");
  return Guard([&] {
    auto v = tot::CanonneType1LowerBound({n, d, epsilon, delta, gamma});
    if (!v.ok()) return FromStatus(v.status());
    *out = *v;
    return TOT_OK;
  });
}

tot_status tot_m_candidates(size_t n, size_t* out, size_t capacity,
                            size_t* count) {
  TOT_C_REQUIRE(count != nullptr, "count is null");
  return Guard([&] {
    const auto ms = tot::MCandidates(n);
    *count = ms.size();
    if (out != nullptr) {
      for (size_t i = 0; i < ms.size() && i < capacity; ++i) out[i] = ms[i];
    }
    return TOT_OK;
  });
}

tot_status tot_optimize_known_effect(const tot_test* test, size_t n,
                                     const tot_effect* effect, double epsilon,
                                     double alpha, tot_optimizer_result* out,
                                     tot_candidate* certificates,
                                     size_t capacity) {
  TOT_C_REQUIRE(test != nullptr && out != nullptr, "null argument");
  return Guard([&] {
    auto e = ToEffect(effect);
    if (!e.ok()) return FromStatus(e.status());
    auto r = tot::OptimizeKnownEffect(*test->test, n, *e, epsilon, alpha);
    if (!r.ok()) return FromStatus(r.status());
    FillOptimizerResult(*r, out, certificates, capacity);
    return TOT_OK;
  });
}

tot_status tot_optimize_target_power(const tot_test* test, size_t n,
                                     double epsilon, double alpha, double rho,
                                     const tot_effect* base,
                                     const double* scales, size_t num_scales,
                                     tot_optimizer_result* out,
                                     tot_candidate* certificates,
                                     size_t capacity) {
  TOT_C_REQUIRE(test != nullptr && out != nullptr, "null argument");
  TOT_C_REQUIRE(scales != nullptr || num_scales == 0, "scales is null");
  return Guard([&] {
    auto e = ToEffect(base);
    if (!e.ok()) return FromStatus(e.status());
    std::vector<tot::EffectSpec> grid;
    for (size_t i = 0; i < num_scales; ++i) {
      if (i > 0 && !(scales[i] > scales[i - 1])) {
        return Fail(TOT_INVALID_ARGUMENT, "effect scales must be increasing");
      }
      grid.push_back(tot::ScaleEffect(*e, scales[i]));
    }
    auto r = tot::OptimizeTargetPower(*test->test, n, epsilon, alpha, rho, grid);
    if (!r.ok()) return FromStatus(r.status());
    FillOptimizerResult(*r, out, certificates, capacity);
    if (r->min_detectable_index.has_value()) {
      out->min_detectable_index = *r->min_detectable_index;
      out->min_detectable_scale = scales[*r->min_detectable_index];
    }
    return TOT_OK;
  });
}

tot_status tot_geometric_grid(double lo, double hi, size_t count, double* out) {
  TOT_C_REQUIRE(out != nullptr || count == 0, "out is null");
  TOT_C_REQUIRE(lo > 0.0 && hi >= lo, "need 0 < lo <= hi");
  return Guard([&] {
    const auto grid = tot::GeometricEffectGrid(tot::StandardizedMean{1.0}, lo, hi, count);
    for (size_t i = 0; i < count; ++i) out[i] = std::get<tot::StandardizedMean>(grid[i]).value;
    return TOT_OK;
  });
}

tot_status tot_evaluate_power(const tot_test* test, size_t n,
                              const tot_effect* effect, double epsilon,
                              double alpha, size_t m, double alpha0,
                              double* theta, double* power) {
  TOT_C_REQUIRE(test != nullptr && theta != nullptr && power != nullptr,
                "null argument");
  return Guard([&] {
    auto e = ToEffect(effect);
    if (!e.ok()) return FromStatus(e.status());
    auto r = tot::EvaluateTotPower(*test->test, n, *e, epsilon, alpha, m, alpha0);
    if (!r.ok()) return FromStatus(r.status());
    *theta = r->theta;
    *power = r->power;
    return TOT_OK;
  });
}

tot_status tot_parse_generator_family(const char* name,
                                      tot_generator_family* out) {
  TOT_C_REQUIRE(name != nullptr && out != nullptr, "null argument");
  return Guard([&] {
    auto g = tot::ParseGeneratorFamily(name);
    if (!g.ok()) return FromStatus(g.status());
    *out = static_cast<tot_generator_family>(*g);
    return TOT_OK;
  });
}

tot_status tot_parse_engine(const char* name, tot_engine_kind* out) {
  TOT_C_REQUIRE(name != nullptr && out != nullptr, "null argument");
  return Guard([&] {
    auto e = tot::ParseEngineKind(name);
    if (!e.ok()) return FromStatus(e.status());
    *out = static_cast<tot_engine_kind>(*e);
    return TOT_OK;
  });
}

tot_status tot_simulate(const tot_sim_plan* plan, tot_sim_result* out) {
  TOT_C_REQUIRE(out != nullptr, "out is null");
  return Guard([&] {
    auto p = ToPlan(plan);
    if (!p.ok()) return FromStatus(p.status());
    auto r = tot::EstimateRejectionRate(*p);
    if (!r.ok()) return FromStatus(r.status());
    *out = tot_sim_result{r->estimate, r->std_error, r->rejections,
                          r->replicates, r->seed};
    return TOT_OK;
  });
}

tot_status tot_simulate_uniformity(const tot_sim_plan* plan, int super_uniform,
                                   tot_uniformity_result* out) {
  TOT_C_REQUIRE(out != nullptr, "out is null");
  return Guard([&] {
    auto p = ToPlan(plan);
    if (!p.ok()) return FromStatus(p.status());
    auto r = tot::EstimatePValueUniformity(
        *p, super_uniform ? tot::UniformityCheck::kSuperUniform
                          : tot::UniformityCheck::kTwoSided);
    if (!r.ok()) return FromStatus(r.status());
    *out = tot_uniformity_result{r->statistic, r->threshold, r->pass ? 1 : 0,
                                 r->replicates, r->seed};
    return TOT_OK;
  });
}

tot_status tot_generate_dataset(const tot_generator* generator, uint64_t seed,
                                tot_dataset** out) {
  TOT_C_REQUIRE(generator != nullptr && out != nullptr, "null argument");
  return Guard([&] {
    tot::GeneratorSpec spec;
    if (generator->family < TOT_GEN_NORMAL ||
        generator->family > TOT_GEN_PVALUE_MIXTURE) {
      return Fail(TOT_INVALID_ARGUMENT, "unknown generator family");
    }
    spec.family = static_cast<tot::GeneratorFamily>(generator->family);
    spec.n = generator->n;
    if (generator->family != TOT_GEN_PVALUE_MIXTURE) {
      auto e = ToEffect(&generator->effect);
      if (!e.ok()) return FromStatus(e.status());
      spec.effect = *e;
    }
    spec.theta = generator->theta;
    spec.mixture_alpha0 = generator->mixture_alpha0;
    tot::Rng rng = tot::MakeRng(seed, 0);
    auto d = tot::GenerateDataset(spec, rng);
    if (!d.ok()) return FromStatus(d.status());
    *out = new tot_dataset{std::move(*d)};
    return TOT_OK;
  });
}

}  // extern "C"
