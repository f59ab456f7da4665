// SPDX-License-Identifier: Apache-2.0
#include "ofdmtrack.h"

#include <cstddef>
#include <exception>
#include <new>
#include <stdexcept>
#include <string>

#include "ofdmtrack/experiment.hpp"
#include "ofdmtrack/scenario.hpp"
#include "ofdmtrack/types.hpp"

struct ot_config {
  ofdmtrack::ExperimentConfig cfg;
};

struct ot_results {
  ofdmtrack::ResultsBundle bundle;
};

namespace {

thread_local std::string g_last_error;

ot_status fail(ot_status code, const std::string& message) {
  g_last_error = message;
  return code;
}

/// Runs fn and translates exceptions into status codes.  Clears the error
/// message on success so stale text never outlives the call that set it.
template <typename Fn>
ot_status guarded(Fn&& fn) {
  try {
    fn();
  } catch (const ofdmtrack::InfeasibleError& e) {
    return fail(OT_EINFEASIBLE, e.what());
  } catch (const ofdmtrack::IoError& e) {
    return fail(OT_EIO, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(OT_EINVAL, e.what());
  } catch (const std::exception& e) {
    return fail(OT_EINTERNAL, e.what());
  } catch (...) {
    return fail(OT_EINTERNAL, "unknown failure");
  }
  g_last_error.clear();
  return OT_OK;
}

}  // namespace

extern "C" {

const char* ot_version(void) { return ofdmtrack::kVersionString; }

const char* ot_last_error(void) { return g_last_error.c_str(); }

ot_config* ot_config_create(void) { return new (std::nothrow) ot_config{}; }

void ot_config_destroy(ot_config* cfg) { delete cfg; }

ot_status ot_config_load_file(ot_config* cfg, const char* path) {
  if (cfg == nullptr || path == nullptr)
    return fail(OT_EINVAL, "ot_config_load_file: null argument");
  return guarded([&] { ofdmtrack::apply_config_file(cfg->cfg, path); });
}

ot_status ot_config_set(ot_config* cfg, const char* key, const char* value) {
  if (cfg == nullptr || key == nullptr || value == nullptr)
    return fail(OT_EINVAL, "ot_config_set: null argument");
  return guarded(
      [&] { ofdmtrack::apply_config_entry(cfg->cfg, key, value); });
}

ot_status ot_run(const ot_config* cfg, ot_results** out) {
  if (cfg == nullptr || out == nullptr)
    return fail(OT_EINVAL, "ot_run: null argument");
  *out = nullptr;
  return guarded([&] {
    auto res = new ot_results{ofdmtrack::run_experiment(cfg->cfg)};
    *out = res;
  });
}

void ot_results_destroy(ot_results* res) { delete res; }

ot_status ot_results_write(const ot_results* res, const char* out_dir) {
  if (res == nullptr) return fail(OT_EINVAL, "ot_results_write: null handle");
  const std::string dir = (out_dir != nullptr && out_dir[0] != '\0')
                              ? std::string(out_dir)
                              : res->bundle.config.out_dir;
  return guarded([&] { ofdmtrack::emit_results(res->bundle, dir); });
}

const char* ot_results_out_dir(const ot_results* res) {
  if (res == nullptr) return nullptr;
  return res->bundle.config.out_dir.c_str();
}

size_t ot_results_estimator_count(const ot_results* res) {
  return res == nullptr ? 0 : res->bundle.summary.size();
}

size_t ot_results_step_count(const ot_results* res) {
  if (res == nullptr || res->bundle.curves.empty()) return 0;
  return res->bundle.curves.front().size();
}

const char* ot_results_estimator_name(const ot_results* res, size_t i) {
  if (res == nullptr || i >= res->bundle.summary.size()) return nullptr;
  return ofdmtrack::estimator_name(res->bundle.summary[i].which);
}

ot_status ot_results_summary(const ot_results* res, size_t i,
                             double out[5]) {
  if (res == nullptr || out == nullptr)
    return fail(OT_EINVAL, "ot_results_summary: null argument");
  if (i >= res->bundle.summary.size())
    return fail(OT_EINVAL, "ot_results_summary: estimator index out of range");
  const ofdmtrack::EstimatorSummary& s = res->bundle.summary[i];
  out[0] = s.metrics.range_rmse;
  out[1] = s.metrics.velocity_rmse;
  out[2] = s.metrics.aoa_rmse;
  out[3] = s.metrics.position_err;
  out[4] = static_cast<double>(s.flops_per_frame);
  g_last_error.clear();
  return OT_OK;
}

ot_status ot_results_curve(const ot_results* res, size_t i, size_t step,
                           double out[4]) {
  if (res == nullptr || out == nullptr)
    return fail(OT_EINVAL, "ot_results_curve: null argument");
  if (i >= res->bundle.curves.size())
    return fail(OT_EINVAL, "ot_results_curve: estimator index out of range");
  const auto& curve = res->bundle.curves[i];
  if (step >= curve.size())
    return fail(OT_EINVAL, "ot_results_curve: step index out of range");
  out[0] = curve[step].range_rmse;
  out[1] = curve[step].velocity_rmse;
  out[2] = curve[step].aoa_rmse;
  out[3] = curve[step].position_err;
  g_last_error.clear();
  return OT_OK;
}

ot_status ot_results_bounds(const ot_results* res, double out[3]) {
  if (res == nullptr || out == nullptr)
    return fail(OT_EINVAL, "ot_results_bounds: null argument");
  out[0] = res->bundle.bounds.crb_aoa_avg_rad2;
  out[1] = res->bundle.bounds.range_bound_m2;
  out[2] = res->bundle.bounds.velocity_bound_m2s2;
  g_last_error.clear();
  return OT_OK;
}

}  // extern "C"
