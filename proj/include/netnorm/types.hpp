#pragma once

#include <Eigen/Dense>

#include <cstdint>

namespace netnorm {

/** Scalar type used for all edge weights and statistics */
using scalar_t = double;

/** Index/size type */
using index_t = Eigen::Index;

/** Dense dynamic matrix */
using matrix_t = Eigen::Matrix<scalar_t, Eigen::Dynamic, Eigen::Dynamic>;

/** Dense dynamic vector */
using vector_t = Eigen::Matrix<scalar_t, Eigen::Dynamic, 1>;

/** Integer vector (e.g. BFS distances) */
using ivector_t = Eigen::Matrix<index_t, Eigen::Dynamic, 1>;

/** 64-bit counter word used by the random streams */
using u64 = std::uint64_t;

}  // namespace netnorm
