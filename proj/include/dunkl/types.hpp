#pragma once

#include <Eigen/Core>

#include <stdexcept>
#include <string>

namespace dunkl {

/// Largest ambient dimension supported anywhere in the library.
inline constexpr int kMaxDim = 4;

/// Point or direction in R^N, N <= kMaxDim. Inline storage, no heap traffic.
using Vec = Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxDim, 1>;

/// Small N x N matrix (group elements).
using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor, kMaxDim, kMaxDim>;

inline Vec make_vec(std::initializer_list<double> values) {
  Vec v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index k = 0;
  for (double x : values) v[k++] = x;
  return v;
}

inline Vec unit_vec(int dim, int axis) {
  Vec v = Vec::Zero(dim);
  v[axis] = 1.0;
  return v;
}

// Error hierarchy. Every failure the library reports derives from Error so
// callers (the CLI in particular) can catch one type and print the message.

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define DUNKL_DEFINE_ERROR(Name) \
  class Name : public Error {    \
   public:                       \
    using Error::Error;          \
  }

DUNKL_DEFINE_ERROR(InvalidRootSystem);
DUNKL_DEFINE_ERROR(GroupTooLarge);
DUNKL_DEFINE_ERROR(OnWall);
DUNKL_DEFINE_ERROR(QuadratureFailure);
DUNKL_DEFINE_ERROR(UnknownSymbol);
DUNKL_DEFINE_ERROR(DomainError);
DUNKL_DEFINE_ERROR(TooCloseToWall);
DUNKL_DEFINE_ERROR(OrbitDiagonal);
DUNKL_DEFINE_ERROR(PreconditionViolated);
DUNKL_DEFINE_ERROR(NoConvergence);
DUNKL_DEFINE_ERROR(GridTooLarge);
DUNKL_DEFINE_ERROR(GridNotSymmetric);
DUNKL_DEFINE_ERROR(SupportsNotSeparated);
DUNKL_DEFINE_ERROR(ConfigError);
DUNKL_DEFINE_ERROR(MissingReports);
DUNKL_DEFINE_ERROR(Unsupported);

#undef DUNKL_DEFINE_ERROR

}  // namespace dunkl
