#pragma once

#include <Eigen/Dense>
#include <unsupported/Eigen/CXX11/Tensor>

#include <stdexcept>

namespace cotlift {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using Tensor3 = Eigen::Tensor<double, 3>;
using Tensor4 = Eigen::Tensor<double, 4>;

/* Configuration and argument problems (bad dimension, non-finite input). */
struct InputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/* Point outside the chart or outside the admissible momentum range. */
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

/* The denominator 2tu' - u of the integrable-v formula vanished. */
struct SingularProfileError : std::domain_error {
  using std::domain_error::domain_error;
};

/* Positivity of the lifted metric failed (u <= 0 or u + 2tv <= 0). */
struct InadmissibleProfileError : std::domain_error {
  using std::domain_error::domain_error;
};

/* A point of the phase space in an induced chart: base coordinates q and
   momentum components p. */
struct PhasePoint {
  Vec q;
  Vec p;
};

/* Tangent components in the coordinate frame (d/dq^i, d/dp_i).  A distinct
   type from AdaptedVec so the two frames cannot be mixed silently. */
struct CoordVec {
  Vec v;
};

/* Tangent components in the adapted frame (delta_i, del^i): entries 0..n-1
   horizontal, n..2n-1 vertical. */
struct AdaptedVec {
  Vec v;
};

inline double max_abs(const Mat& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

template <typename TensorT>
double tensor_max_abs(const TensorT& t) {
  Eigen::Tensor<double, 0> m = t.abs().maximum();
  return m();
}

}  // namespace cotlift
