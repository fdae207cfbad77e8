#include "ossb/bessel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace ossb {
namespace {

constexpr double kSeriesLimit = 12.0;

// Sum of (-1)^j (x/2)^(2j+n) / (j! (j+n)!). Extended precision keeps the
// cancellation error near x = 12 well below 1e-15.
long double ascending_series(int n, long double x) {
  const long double half = x / 2.0L;
  long double term = 1.0L;
  for (int k = 1; k <= n; ++k) term *= half / static_cast<long double>(k);

  const long double q = half * half;
  long double sum = term;
  for (int j = 1; j < 500; ++j) {
    term *= -q / (static_cast<long double>(j) * static_cast<long double>(j + n));
    sum += term;
    if (std::fabs(term) <= 1e-22L * std::fabs(sum) && j > half) break;
  }
  return sum;
}

// Downward recurrence J_{k-1} = (2k/x) J_k - J_{k+1} from an order well above
// max(n, x), normalized with J_0 + 2 sum_{k>=1} J_{2k} = 1.
long double miller_recurrence(int n, long double x) {
  int start = std::max(n, static_cast<int>(std::ceil(x))) + 60;
  if (start % 2 != 0) ++start;

  long double next = 0.0L;   // J_{k+1}
  long double cur = 1e-30L;  // J_k
  long double at_n = 0.0L;
  long double norm = 0.0L;

  for (int k = start; k > 0; --k) {
    const long double prev = (2.0L * k / x) * cur - next;  // J_{k-1}
    next = cur;
    cur = prev;
    if (k - 1 == n) at_n = cur;
    if ((k - 1) % 2 == 0 && k - 1 > 0) norm += 2.0L * cur;
    if (std::fabs(cur) > 1e300L) {
      next *= 1e-300L;
      cur *= 1e-300L;
      at_n *= 1e-300L;
      norm *= 1e-300L;
    }
  }
  norm += cur;  // J_0
  return at_n / norm;
}

}  // namespace

double bessel_j(int n, double x) {
  if (n < -kBesselMaxOrder || n > kBesselMaxOrder || !(x >= 0.0) ||
      x > kBesselMaxArgument) {
    throw std::domain_error("bessel_j: (n=" + std::to_string(n) + ", x=" +
                            std::to_string(x) +
                            ") outside |n| <= 64, 0 <= x <= 32");
  }
  const int order = n < 0 ? -n : n;
  if (x == 0.0) return order == 0 ? 1.0 : 0.0;

  const long double value = x < kSeriesLimit
                                ? ascending_series(order, x)
                                : miller_recurrence(order, x);
  const double result = static_cast<double>(value);
  return (n < 0 && order % 2 != 0) ? -result : result;
}

}  // namespace ossb
