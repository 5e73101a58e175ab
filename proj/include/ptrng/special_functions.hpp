#pragma once

namespace ptrng {

/// Regularized upper incomplete gamma function Q(a, x) = Gamma(a, x) / Gamma(a),
/// the upper tail of the chi-square family: a chi-square statistic s with
/// k degrees of freedom has exceed probability Q(k/2, s/2).
///
/// Uses the power series for x < a + 1 and a modified-Lentz continued
/// fraction otherwise; accurate to roughly 1e-13 over the tested range.
[[nodiscard]] double gamma_q(double a, double x);

/// Upper-tail probability of the one-sample Kolmogorov-Smirnov statistic:
/// the asymptotic series 2 sum_{k>=1} (-1)^(k-1) exp(-2 k^2 t^2), truncated
/// once a term falls below 1e-10 and clamped to [0, 1].
[[nodiscard]] double ks_tail(double t);

}  // namespace ptrng
