#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "nlft/core_types.hpp"

namespace nlft {

/// y = A x for a square operator given only through its action.
using LinearOperator = std::function<void(std::span<const Complex> x, std::span<Complex> y)>;

struct GmresResult {
  std::vector<Complex> x;
  double residual_norm = 0.0;  // true residual ||b - A x||_2 at exit
  double rhs_norm = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
};

/// Restarted GMRES(restart) from x0 = 0 with modified Gram-Schmidt and one
/// reorthogonalization pass. Stops once ||b - A x|| <= tol ||b||.
GmresResult gmres(const LinearOperator& apply, std::span<const Complex> rhs, double tol,
                  std::size_t max_iterations, std::size_t restart);

double norm2(std::span<const Complex> v);
/// sum_k u_k conj(v_k)
Complex inner(std::span<const Complex> u, std::span<const Complex> v);

}  // namespace nlft
