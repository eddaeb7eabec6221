#pragma once

// Counter-based deterministic randomness. Every random draw in the library
// and in the verification suite flows from a single 64-bit key through
//
//   value(i) = splitmix64(key + i * 0x9E3779B97F4A7C15)
//
// (a Weyl sequence through the SplitMix64 finalizer). Sub-streams are derived
// by folding labels and integers into the key with the same finalizer, so a
// (check, dim, seed-index) triple always reproduces the same draws regardless
// of evaluation order or platform.

#include "qig/core.hpp"

#include <cstdint>
#include <string_view>

namespace qig {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

class CounterRng {
 public:
  explicit CounterRng(std::uint64_t key) : key_(key) {}

  // Derive a sub-stream key by folding in a label or an integer.
  static std::uint64_t derive(std::uint64_t key, std::string_view label) {
    std::uint64_t h = 0xCBF29CE484222325ull;  // FNV-1a 64
    for (unsigned char c : label) {
      h ^= c;
      h *= 0x100000001B3ull;
    }
    return splitmix64(key ^ h);
  }

  static std::uint64_t derive(std::uint64_t key, std::uint64_t salt) {
    return splitmix64(key ^ (salt + 0x9E3779B97F4A7C15ull));
  }

  std::uint64_t next_u64() {
    return splitmix64(key_ + 0x9E3779B97F4A7C15ull * (++counter_));
  }

  // Uniform on (0,1); never returns 0.
  double uniform() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Standard normal via Box-Muller.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  cplx normal_complex() { return cplx(normal(), normal()); }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

inline cmat random_complex(CounterRng& rng, int n) {
  cmat g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = rng.normal_complex();
  return g;
}

inline cmat random_hermitian(CounterRng& rng, int n) {
  return symmetrized(random_complex(rng, n));
}

// Haar-distributed unitary: QR of a complex Ginibre matrix with the phases of
// diag(R) absorbed into Q.
inline cmat haar_unitary(CounterRng& rng, int n) {
  cmat g = random_complex(rng, n);
  Eigen::HouseholderQR<cmat> qr(g);
  cmat q = qr.householderQ();
  cmat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < n; ++i) {
    cplx d = r(i, i);
    q.col(i) *= (d == cplx(0.0) ? cplx(1.0) : d / std::abs(d));
  }
  return q;
}

}  // namespace qig
