#pragma once

namespace trpa {

/// Principal branch W0 of the Lambert W function restricted to w >= 0,
/// i.e. the unique x >= 0 with x * exp(x) = w. Halley iteration with a
/// series / log-log initial guess; residual |x e^x - w| <= 2e-14 * max(1, w).
///
/// Throws std::invalid_argument for negative or non-finite arguments and
/// std::runtime_error if the iteration fails to converge (a defect, not an
/// input condition).
double lambert_w0(double w);

}  // namespace trpa
