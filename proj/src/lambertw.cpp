#include "trpa/lambertw.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace trpa {

double lambert_w0(double w) {
    if (!std::isfinite(w) || w < 0.0) {
        throw std::invalid_argument("lambert_w0: argument must be finite and >= 0");
    }
    if (w == 0.0) return 0.0;

    // Initial guess: two-term series near 0, log - log log for large
    // arguments, a fixed midpoint otherwise.
    double x;
    if (w < 1e-4) {
        x = w * (1.0 - w);
    } else if (w > std::numbers::e) {
        const double l = std::log(w);
        x = l - std::log(l);
    } else {
        x = 0.5;
    }

    const double tol = 2e-14 * std::fmax(1.0, w);
    for (int iter = 0; iter < 50; ++iter) {
        const double ex = std::exp(x);
        const double f = x * ex - w;
        if (std::fabs(f) <= tol) return x;
        // Halley step for f(x) = x e^x - w.
        const double fp = ex * (x + 1.0);
        const double step = f / (fp - (x + 2.0) * f / (2.0 * (x + 1.0)));
        x -= step;
    }
    throw std::runtime_error("lambert_w0: Halley iteration failed to converge");
}

}  // namespace trpa
