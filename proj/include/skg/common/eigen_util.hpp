#pragma once

#include <Eigen/Dense>

namespace skg {

/// Shape and element-wise equality; safe for mismatched shapes.
template <typename A, typename B>
bool same_values(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() && (a.array() == b.array()).all();
}

}  // namespace skg
