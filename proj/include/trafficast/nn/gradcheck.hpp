#pragma once

#include <functional>

#include "trafficast/nn/types.hpp"

namespace trafficast::nn {

/// Compare analytic gradients against central finite differences.
/// `loss_and_grad` must zero nothing itself: it is called with freshly zeroed
/// gradient buffers, runs a full forward/backward, and returns the loss.
/// Returns max_i |fd_i - g_i| / max(|fd_i|, |g_i|, floor).
double grad_check(ParamBlocks& params, const std::function<double()>& loss_and_grad,
                  double eps = 1e-5, double floor = 1e-3);

} // namespace trafficast::nn
