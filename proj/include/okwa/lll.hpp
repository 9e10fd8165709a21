#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstddef>
#include <vector>

#include "okwa/zlattice.hpp"

namespace okwa {

// LLL reduction (delta = 0.99) of integer coefficient vectors under the
// quadratic form x -> |sum_i x_i e_i|^2, evaluated in double precision. Only
// the exact integer vectors are returned, so rounding affects quality, not
// validity.
inline std::vector<IntVector> lll_reduce(std::vector<IntVector> b,
                                         const std::vector<std::vector<double>>& embed) {
  const std::size_t n = b.size();
  if (n < 2) return b;
  const std::size_t dim = embed.empty() ? 0 : embed[0].size();
  auto real = [&](const IntVector& v) {
    std::vector<double> r(dim, 0.0);
    for (std::size_t i = 0; i < v.size(); ++i) {
      double c = v[i].get_d();
      for (std::size_t t = 0; t < dim; ++t) r[t] += c * embed[i][t];
    }
    return r;
  };
  auto dot = [&](const std::vector<double>& x, const std::vector<double>& y) {
    double s = 0;
    for (std::size_t t = 0; t < dim; ++t) s += x[t] * y[t];
    return s;
  };
  std::vector<std::vector<double>> gs(n);
  std::vector<std::vector<double>> mu(n, std::vector<double>(n, 0.0));
  std::vector<double> norms(n);
  auto recompute = [&]() {
    for (std::size_t i = 0; i < n; ++i) {
      gs[i] = real(b[i]);
      std::vector<double> bi = gs[i];
      for (std::size_t j = 0; j < i; ++j) {
        mu[i][j] = norms[j] > 0 ? dot(bi, gs[j]) / norms[j] : 0.0;
        for (std::size_t t = 0; t < dim; ++t) gs[i][t] -= mu[i][j] * gs[j][t];
      }
      norms[i] = dot(gs[i], gs[i]);
    }
  };
  recompute();
  std::size_t k = 1;
  for (int guard = 0; k < n && guard < 100000; ++guard) {
    for (std::size_t j = k; j-- > 0;) {
      double q = std::round(mu[k][j]);
      if (q == 0) continue;
      mpz_class qz(q);
      for (std::size_t i = 0; i < b[k].size(); ++i) b[k][i] -= qz * b[j][i];
      recompute();
    }
    if (norms[k] >= (0.99 - mu[k][k - 1] * mu[k][k - 1]) * norms[k - 1]) {
      ++k;
    } else {
      std::swap(b[k], b[k - 1]);
      recompute();
      k = k > 1 ? k - 1 : 1;
    }
  }
  return b;
}

}  // namespace okwa
