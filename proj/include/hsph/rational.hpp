#pragma once

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace hsph {

using Int = mpz_class;
using Rat = mpq_class;

// Precondition violations (bad arguments, unsupported regimes).  The CLI maps
// these to exit code 1.
struct rejected_parameter : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Internal contract failures: an exact identity that must hold did not.
// The CLI maps these to exit code 2.
struct invariant_violation : std::logic_error {
  using std::logic_error::logic_error;
};

inline double to_double(const Rat& q) { return q.get_d(); }

// mpz_class has no long long constructor; long is 64-bit on this platform.
inline Int to_int(long long x) { return Int(static_cast<long>(x)); }

inline Int int_sqrt(const Int& n) {
  Int r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

inline bool is_perfect_square(const Int& n, Int& root) {
  if (n < 0) return false;
  root = int_sqrt(n);
  return root * root == n;
}

inline long sigma_divisors(long m) {
  if (m <= 0) throw rejected_parameter("sigma: m must be positive");
  long s = 0;
  for (long d = 1; d * d <= m; ++d)
    if (m % d == 0) {
      s += d;
      if (d != m / d) s += m / d;
    }
  return s;
}

inline bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::vector<long> odd_primes_in(double lo, double hi) {
  std::vector<long> ps;
  for (long n = 3; n <= static_cast<long>(hi); n += 2)
    if (n >= lo && is_prime(n)) ps.push_back(n);
  return ps;
}

// Dense exact 3x3 matrix, used for rotation representations.
struct Mat3Q {
  std::array<std::array<Rat, 3>, 3> a{};

  static Mat3Q identity() {
    Mat3Q m;
    for (int i = 0; i < 3; ++i) m.a[i][i] = 1;
    return m;
  }

  Rat& operator()(int i, int j) { return a[i][j]; }
  const Rat& operator()(int i, int j) const { return a[i][j]; }

  Mat3Q operator*(const Mat3Q& o) const {
    Mat3Q r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        Rat s = 0;
        for (int k = 0; k < 3; ++k) s += a[i][k] * o.a[k][j];
        r.a[i][j] = s;
      }
    return r;
  }

  Mat3Q transpose() const {
    Mat3Q r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) r.a[i][j] = a[j][i];
    return r;
  }

  Rat det() const {
    return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
           a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
           a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
  }

  bool operator==(const Mat3Q& o) const { return a == o.a; }
};

}  // namespace hsph
