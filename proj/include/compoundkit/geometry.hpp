#pragma once

#include <cmath>
#include <stdexcept>

#include "compoundkit/compound.hpp"
#include "compoundkit/matrix.hpp"

namespace ck {

/// Gram matrix X^T X of the generator columns.
inline rmatrix gram(const rmatrix& x) {
  if (x.cols() > x.rows()) throw std::invalid_argument("gram: need k <= n");
  return x.transpose() * x;
}

struct volume_result {
  double value = 0.0;      // |X^(k)|_2
  double via_gram = 0.0;   // sqrt(det(X^T X))
  double route_gap = 0.0;  // discrepancy between the two routes
};

/// Parallelotope volume: the Euclidean norm of the compound vector X^(k),
/// cross-evaluated against sqrt(det(Gram)). Degenerate generators give 0.
inline volume_result volume(const rmatrix& x) {
  if (x.cols() > x.rows()) throw std::invalid_argument("volume: need k <= n");
  volume_result r;
  const int k = x.cols();
  if (k == 0) {
    r.value = r.via_gram = 1.0;
    return r;
  }
  const rmatrix xk = mult_compound(x, k).entries;  // column vector, C(n,k) x 1
  double s = 0.0;
  for (int i = 0; i < xk.rows(); ++i) s += xk(i, 0) * xk(i, 0);
  r.value = std::sqrt(s);
  const double g = det(gram(x));
  r.via_gram = std::sqrt(std::max(0.0, g));
  r.route_gap = std::abs(r.value - r.via_gram);
  return r;
}

}  // namespace ck
