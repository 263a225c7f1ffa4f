#pragma once

// Frame properties of the integer translates {psi(. - k)} read off the density p_psi,
// plus a Gram-section eigenvalue oracle that never looks at p.

#include "transpec/core_functions.hpp"
#include "transpec/spectral_density.hpp"

#include <Eigen/Dense>

#include <limits>
#include <optional>
#include <string_view>

namespace transpec {

enum class Verdict { ONB, PARSEVAL, RIESZ, FRAME, BESSEL, NONE };

std::string_view to_string(Verdict v);
std::optional<Verdict> parse_verdict(std::string_view name);

/// Does a system with verdict `v` have `property`?  ONB => PARSEVAL => FRAME => BESSEL,
/// ONB => RIESZ => FRAME.  NONE has no property but itself.
bool satisfies(Verdict v, Verdict property);

struct ClassifyOptions {
    /// Slack for "p == 1", "p in {0,1}", "support_mass == 1" and the lower bound A.
    double tol = 1e-3;
    /// Threshold for the essential support {p > support_tol}. Negative means tol^2.
    double support_tol = -1.0;
    /// Densities whose grid max exceeds cap are reported as NONE.
    double cap = std::numeric_limits<double>::infinity();
};

struct FrameReport {
    Verdict verdict = Verdict::NONE;
    double lower_bound = 0.0;   // A: min of p over the support
    double upper_bound = 0.0;   // B: max of p
    double support_mass = 0.0;  // |{p > support_tol}|
    double tol = 0.0;
    double support_tol = 0.0;
};

FrameReport classify(const PeriodicDensity& p, const ClassifyOptions& options = {});

struct GramBounds {
    double lambda_min = 0.0;
    double lambda_max = 0.0;
};

/// G_{jk} = <psi_j | psi_k>, |j|, |k| <= k_max, by direct inner products.
Eigen::MatrixXcd gram_section(const LineFunction& psi, long k_max);

/// Extreme eigenvalues of gram_section(psi, k_max).
GramBounds gram_frame_bounds_oracle(const LineFunction& psi, long k_max);

}  // namespace transpec
