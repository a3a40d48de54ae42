#pragma once

#include "cotlift/types.hpp"

namespace testutil {

inline double diff3(const cotlift::Tensor3& a, const cotlift::Tensor3& b) {
  const cotlift::Tensor3 d = a - b;
  return cotlift::tensor_max_abs(d);
}

inline double diff4(const cotlift::Tensor4& a, const cotlift::Tensor4& b) {
  const cotlift::Tensor4 d = a - b;
  return cotlift::tensor_max_abs(d);
}

}  // namespace testutil
