#pragma once

#include "cts/baselines.hpp"
#include "cts/beta_params.hpp"
#include "cts/change_point_ts.hpp"
#include "cts/environment.hpp"
#include "cts/error.hpp"
#include "cts/experiment.hpp"
#include "cts/heatmap.hpp"
#include "cts/metrics.hpp"
#include "cts/particle_set.hpp"
#include "cts/policy.hpp"
#include "cts/registry.hpp"
#include "cts/replay_envs.hpp"
#include "cts/report.hpp"
#include "cts/resampling.hpp"
#include "cts/rng.hpp"
#include "cts/synthetic_envs.hpp"
