// Copyright 2026 The trajbench Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "trajbench/metrics/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "trajbench/error.hpp"
#include "trajbench/util.hpp"

namespace trajbench::metrics {
namespace {

void check_finite(std::span<const double> v, const char* what) {
  for (double x : v)
    if (!std::isfinite(x)) throw DomainError(std::string("non-finite value in ") + what);
}

}  // namespace

double step_mse(std::span<const double> predicted, std::span<const double> ground_truth) {
  if (predicted.size() != ground_truth.size())
    throw LengthMismatch(ground_truth.size(), predicted.size());
  if (predicted.empty()) throw EmptyInput("step_mse of empty vectors");
  check_finite(predicted, "prediction");
  check_finite(ground_truth, "ground truth");
  std::vector<double> sq(predicted.size());
  for (std::size_t i = 0; i < sq.size(); ++i) {
    double d = ground_truth[i] - predicted[i];
    sq[i] = d * d;
  }
  return pairwise_mean(sq);
}

double step_mse(const StepPair& pair) { return step_mse(pair.predicted, pair.ground_truth); }

TrajectoryResult score_trajectory(const TrajectoryPairs& trajectory) {
  if (trajectory.steps.empty())
    throw EmptyInput("trajectory '" + trajectory.episode_id + "' has no steps");
  TrajectoryResult r;
  r.episode_id = trajectory.episode_id;
  r.step_mses.reserve(trajectory.steps.size());
  for (const auto& p : trajectory.steps) r.step_mses.push_back(step_mse(p));
  r.trajectory_mse = pairwise_mean(r.step_mses);
  r.final_step = trajectory.steps.back();
  return r;
}

std::vector<TrajectoryResult> score_trajectories(std::span<const TrajectoryPairs> trajectories) {
  std::vector<TrajectoryResult> out;
  out.reserve(trajectories.size());
  for (const auto& t : trajectories) out.push_back(score_trajectory(t));
  return out;
}

double amse(std::span<const TrajectoryResult> results) {
  if (results.empty()) throw EmptyInput("AMSE over no trajectories");
  std::vector<double> means;
  means.reserve(results.size());
  for (const auto& r : results) means.push_back(r.trajectory_mse);
  return pairwise_mean(means);
}

double flat_mse(std::span<const TrajectoryResult> results) {
  std::vector<double> all;
  for (const auto& r : results) all.insert(all.end(), r.step_mses.begin(), r.step_mses.end());
  if (all.empty()) throw EmptyInput("flat MSE over no steps");
  return pairwise_mean(all);
}

std::string to_string(NamseMode m) {
  return m == NamseMode::kPredictionsOnly ? "predictions_only" : "both";
}

NamseMode namse_mode_from_string(const std::string& s) {
  if (s == "both") return NamseMode::kBoth;
  if (s == "predictions_only") return NamseMode::kPredictionsOnly;
  throw Error("unknown NAMSE mode '" + s + "' (expected both or predictions_only)");
}

NamseResult namse(std::span<const TrajectoryPairs> trajectories, NamseMode mode) {
  if (trajectories.empty()) throw EmptyInput("NAMSE over no trajectories");
  const StepPair* first = nullptr;
  for (const auto& t : trajectories) {
    if (t.steps.empty()) throw EmptyInput("trajectory '" + t.episode_id + "' has no steps");
    if (!first) first = &t.steps.front();
  }
  const std::size_t n = first->predicted.size();
  if (n == 0) throw EmptyInput("NAMSE of empty vectors");

  // Pass 1: per-dimension prediction range.
  NamseResult out;
  out.pred_min.assign(n, INFINITY);
  out.pred_max.assign(n, -INFINITY);
  for (const auto& t : trajectories)
    for (const auto& p : t.steps) {
      if (p.predicted.size() != n) throw LengthMismatch(n, p.predicted.size());
      if (p.ground_truth.size() != n) throw LengthMismatch(n, p.ground_truth.size());
      check_finite(p.predicted, "prediction");
      check_finite(p.ground_truth, "ground truth");
      for (std::size_t d = 0; d < n; ++d) {
        out.pred_min[d] = std::min(out.pred_min[d], p.predicted[d]);
        out.pred_max[d] = std::max(out.pred_max[d], p.predicted[d]);
      }
    }
  std::vector<std::size_t> kept;
  for (std::size_t d = 0; d < n; ++d)
    (out.pred_max[d] > out.pred_min[d] ? kept : out.degenerate_dims).push_back(d);
  if (kept.empty()) return out;

  // Pass 2: AMSE over transformed pairs, kept dimensions only.
  std::vector<double> traj_means;
  traj_means.reserve(trajectories.size());
  std::vector<double> step_means;
  std::vector<double> sq(kept.size());
  for (const auto& t : trajectories) {
    step_means.clear();
    for (const auto& p : t.steps) {
      for (std::size_t k = 0; k < kept.size(); ++k) {
        const std::size_t d = kept[k];
        const double range = out.pred_max[d] - out.pred_min[d];
        const double pred = (p.predicted[d] - out.pred_min[d]) / range;
        const double gt = mode == NamseMode::kBoth ? (p.ground_truth[d] - out.pred_min[d]) / range
                                                   : p.ground_truth[d];
        const double diff = gt - pred;
        sq[k] = diff * diff;
      }
      step_means.push_back(pairwise_mean(sq));
    }
    traj_means.push_back(pairwise_mean(step_means));
  }
  out.value = pairwise_mean(traj_means);
  return out;
}

double completion(std::span<const TrajectoryResult> results, double epsilon) {
  if (results.empty()) throw EmptyInput("completion over no trajectories");
  if (!(epsilon >= 0.0)) throw DomainError("completion epsilon must be >= 0");
  std::size_t hits = 0;
  for (const auto& r : results) {
    const auto& p = r.final_step;
    if (p.predicted.size() != p.ground_truth.size())
      throw LengthMismatch(p.ground_truth.size(), p.predicted.size());
    double worst = 0.0;
    for (std::size_t d = 0; d < p.predicted.size(); ++d)
      worst = std::max(worst, std::abs(p.predicted[d] - p.ground_truth[d]));
    if (worst <= epsilon) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(results.size());
}

MetricReport aggregate_report(const std::string& dataset, const std::string& display_name,
                              std::span<const TrajectoryPairs> trajectories, double epsilon,
                              NamseMode namse_mode, RunMetadata metadata) {
  if (trajectories.empty()) throw EmptyInput("dataset '" + dataset + "' has no trajectories");
  const auto results = score_trajectories(trajectories);
  const NamseResult nr = namse(trajectories, namse_mode);

  std::size_t steps = 0;
  std::size_t fallbacks = 0;
  for (const auto& t : trajectories) {
    steps += t.steps.size();
    for (const auto& p : t.steps) fallbacks += p.used_fallback ? 1 : 0;
  }

  MetricReport r;
  r.dataset = dataset;
  r.display_name = display_name;
  r.amse = amse(results);
  r.namse = nr.value;
  r.flat_mse = flat_mse(results);
  r.completion_rate = completion(results, epsilon);
  r.fallback_rate = static_cast<double>(fallbacks) / static_cast<double>(steps);
  r.n_trajectories = trajectories.size();
  r.n_steps = steps;
  r.run_metadata = std::move(metadata);
  r.run_metadata.epsilon = epsilon;
  r.run_metadata.namse_mode = namse_mode;
  r.run_metadata.namse_degenerate_dims = nr.degenerate_dims.size();
  return r;
}

}  // namespace trajbench::metrics
