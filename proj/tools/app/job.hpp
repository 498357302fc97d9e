#pragma once

#include "config.hpp"

#include "isor/profile.hpp"
#include "isor/surface.hpp"

#include <json.hpp>

#include <optional>

namespace isor::app {

// Intrinsic data a surface is claimed to realize.
struct Claim {
  bool untwisted = false;
  MetricProfile profile;
  double H = 0.0, a = 0.0, b = 0.0;  // twisted: lambda from H, a, b
  double c = 0.0;                    // untwisted: speed-up constant
};

struct SurfaceJob {
  Mesh mesh;
  std::optional<SurfaceMap> map;  // set for closed-form and quadrature-backed surfaces
  Claim claim;                    // the data the surface was built from
  std::optional<Vec3> period;     // translation period of the resonant minimal case
  nlohmann::json notes = nlohmann::json::object();
};

// Library errors propagate unchanged; the caller maps them to exit codes.
SurfaceJob build_job(const JobConfig& cfg);

// The job's claim with the config's claim_* overrides applied.
Claim claimed_data(const SurfaceJob& job, const JobConfig& cfg);

// Conformal factor for an untwisted source on `domain`.
MetricProfile untwisted_source(const JobConfig& cfg, Interval domain);

}  // namespace isor::app
