#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "cts/rng.hpp"

namespace cts {

/// Thrown when the requested survivor count is not smaller than the support.
class NoResamplingNeeded : public std::runtime_error {
 public:
  NoResamplingNeeded() : std::runtime_error("no resampling needed") {}
};

/// Solves sum_i min(1, p_i / kappa) = survivors for kappa by bisection.
///
/// The map is monotone decreasing in kappa; the bracket is
/// [min(p) * 1e-3, 1] and the search stops after 200 halvings or once the
/// residual drops below 1e-12. Weights must be positive and normalized.
double solve_kappa(std::span<const double> weights, std::size_t survivors);

/// Stratified optimal resampling.
///
/// Returns the new weight q_i of every input point: points heavier than kappa
/// keep q_i = p_i, the rest are swept once by a stratified walk started at
/// u ~ U(0, kappa) and either survive with q_i = kappa or drop to zero.
/// E[q_i] = p_i and at most `survivors` entries are nonzero. The result is not
/// renormalized.
std::vector<double> stratified_optimal_resample(std::span<const double> weights,
                                                std::size_t survivors, Rng& rng);

}  // namespace cts
