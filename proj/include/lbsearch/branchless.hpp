#pragma once

#include <concepts>

namespace lbsearch {

/// Selects `v_true` when `c` is 1 and `v_false` when `c` is 0 using only
/// arithmetic. `c` must already be normalized to {0, 1}.
template <std::integral T>
constexpr T bchoice(T c, T v_true, T v_false) noexcept {
  return (c * v_true) | (static_cast<T>(!c) * v_false);
}

template <std::integral T>
constexpr T branchless_min(T a, T b) noexcept {
  return bchoice(static_cast<T>(a < b), a, b);
}

template <std::integral T>
constexpr T branchless_max(T a, T b) noexcept {
  return bchoice(static_cast<T>(a < b), b, a);
}

}  // namespace lbsearch
