#pragma once

#include <cstdint>
#include <numeric>
#include <tuple>

#include "snl/geometry.hpp"

namespace snl {

/// Sublattice of Z^2 spanned by added vectors, kept in Hermite form
/// {(px, py), (0, r)} with px >= 0 and 0 <= py < r when both are nonzero.
class LatticeSpan {
 public:
  void add(IntVec v) {
    if (v.x == 0) {
      r_ = std::gcd(r_, v.y);
    } else if (px_ == 0) {
      px_ = v.x;
      py_ = v.y;
    } else {
      auto [g, s, t] = ext_gcd(px_, v.x);
      const std::int64_t residual = (v.x / g) * py_ - (px_ / g) * v.y;
      const std::int64_t ny = s * py_ + t * v.y;
      px_ = g;
      py_ = ny;
      r_ = std::gcd(r_, residual);
    }
    if (px_ < 0) {
      px_ = -px_;
      py_ = -py_;
    }
    if (r_ != 0 && px_ != 0) py_ = ((py_ % r_) + r_) % r_;
  }

  bool contains(IntVec h) const {
    std::int64_t rem = h.y;
    if (px_ == 0) {
      if (h.x != 0) return false;
    } else {
      if (h.x % px_ != 0) return false;
      rem -= (h.x / px_) * py_;
    }
    return r_ == 0 ? rem == 0 : rem % r_ == 0;
  }

  bool is_full() const { return px_ == 1 && r_ == 1; }

 private:
  // Returns (g, s, t) with s*a + t*b = g = gcd(a, b) >= 0.
  static std::tuple<std::int64_t, std::int64_t, std::int64_t> ext_gcd(std::int64_t a, std::int64_t b) {
    if (b == 0) return {a < 0 ? -a : a, a < 0 ? -1 : 1, 0};
    auto [g, s, t] = ext_gcd(b, a % b);
    return {g, t, s - (a / b) * t};
  }

  std::int64_t px_ = 0;
  std::int64_t py_ = 0;
  std::int64_t r_ = 0;
};

}  // namespace snl
