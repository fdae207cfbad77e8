#pragma once

namespace ossb {

/// Largest |n| accepted by bessel_j.
inline constexpr int kBesselMaxOrder = 64;
/// Largest argument accepted by bessel_j.
inline constexpr double kBesselMaxArgument = 32.0;

/// Bessel function of the first kind J_n(x) for integer n and 0 <= x <= 32.
///
/// Uses the ascending power series below x = 12 and normalized downward
/// (Miller) recurrence above it; absolute accuracy is better than 1e-12 over
/// the whole envelope. Negative orders are obtained from J_{-n} = (-1)^n J_n,
/// so that identity holds exactly. Throws std::domain_error outside the
/// envelope.
double bessel_j(int n, double x);

}  // namespace ossb
