#pragma once

#include <span>

#include "nlft/core_types.hpp"

namespace nlft::detail {

// Unnormalized in-place transforms. `inverse_fft` computes
// y_j = sum_k x_k e^(+2 pi i jk/N) (coefficients -> samples); `forward_fft`
// uses e^(-2 pi i jk/N). Plans are cached per size and shared across threads.
void forward_fft(std::span<Complex> data);
void inverse_fft(std::span<Complex> data);

/// Slot of coefficient index k in a length-N periodic buffer.
inline std::size_t wrap(Index k, std::size_t n) {
  const auto m = static_cast<Index>(n);
  return static_cast<std::size_t>(((k % m) + m) % m);
}

}  // namespace nlft::detail
