#include "nlft/krylov.hpp"

#include <algorithm>
#include <cmath>

namespace nlft {

double norm2(std::span<const Complex> v) {
  double s = 0.0;
  for (const auto& c : v) s += std::norm(c);
  return std::sqrt(s);
}

Complex inner(std::span<const Complex> u, std::span<const Complex> v) {
  Complex s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * std::conj(v[i]);
  return s;
}

namespace {

struct Givens {
  double c = 1.0;
  Complex s = 0.0;

  static Givens zeroing(Complex a, Complex b) {
    const double abs_a = std::abs(a);
    const double rho = std::hypot(abs_a, std::abs(b));
    if (rho == 0.0) return {};
    if (abs_a == 0.0) return {0.0, 1.0};
    return {abs_a / rho, (a / abs_a) * std::conj(b) / rho};
  }

  void apply(Complex& x, Complex& y) const {
    const Complex nx = c * x + s * y;
    y = -std::conj(s) * x + c * y;
    x = nx;
  }
};

}  // namespace

GmresResult gmres(const LinearOperator& apply, std::span<const Complex> rhs, double tol,
                  std::size_t max_iterations, std::size_t restart) {
  const std::size_t dim = rhs.size();
  GmresResult out;
  out.x.assign(dim, 0.0);
  out.rhs_norm = norm2(rhs);
  if (out.rhs_norm == 0.0) {
    out.converged = true;
    return out;
  }
  const double target = tol * out.rhs_norm;
  restart = std::max<std::size_t>(1, std::min(restart, dim));

  std::vector<Complex> r(dim), w(dim);
  std::vector<std::vector<Complex>> basis;
  std::vector<std::vector<Complex>> h;  // h[j] is column j, length j + 2
  std::vector<Givens> rotations;
  std::vector<Complex> g;

  auto residual = [&] {
    apply(out.x, w);
    for (std::size_t i = 0; i < dim; ++i) r[i] = rhs[i] - w[i];
    return norm2(r);
  };

  double beta = out.rhs_norm;
  std::copy(rhs.begin(), rhs.end(), r.begin());
  while (true) {
    out.residual_norm = beta;
    if (beta <= target) {
      out.converged = true;
      return out;
    }
    if (out.iterations >= max_iterations) return out;

    basis.assign(1, std::vector<Complex>(dim));
    for (std::size_t i = 0; i < dim; ++i) basis[0][i] = r[i] / beta;
    h.clear();
    rotations.clear();
    g.assign(1, beta);

    std::size_t j = 0;
    for (; j < restart && out.iterations < max_iterations; ++j) {
      ++out.iterations;
      apply(basis[j], w);
      std::vector<Complex> col(j + 2, 0.0);
      for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t i = 0; i <= j; ++i) {
          const Complex hij = inner(w, basis[i]);
          col[i] += hij;
          for (std::size_t k = 0; k < dim; ++k) w[k] -= hij * basis[i][k];
        }
      }
      const double next = norm2(w);
      col[j + 1] = next;
      for (std::size_t i = 0; i < j; ++i) rotations[i].apply(col[i], col[i + 1]);
      rotations.push_back(Givens::zeroing(col[j], col[j + 1]));
      rotations[j].apply(col[j], col[j + 1]);
      g.push_back(0.0);
      rotations[j].apply(g[j], g[j + 1]);
      h.push_back(std::move(col));

      const bool breakdown = next <= 1e-300;
      if (std::abs(g[j + 1]) <= target || breakdown) {
        ++j;
        break;
      }
      basis.emplace_back(dim);
      for (std::size_t k = 0; k < dim; ++k) basis[j + 1][k] = w[k] / next;
    }

    // Back substitution on the j x j triangle, then update x.
    std::vector<Complex> y(j);
    for (std::size_t i = j; i-- > 0;) {
      Complex s = g[i];
      for (std::size_t k = i + 1; k < j; ++k) s -= h[k][i] * y[k];
      y[i] = s / h[i][i];
    }
    for (std::size_t i = 0; i < j; ++i) {
      for (std::size_t k = 0; k < dim; ++k) out.x[k] += y[i] * basis[i][k];
    }
    beta = residual();
  }
}

}  // namespace nlft
