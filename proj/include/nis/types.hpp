#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>
#include <vector>

namespace nis {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Base class of all library errors.
struct NisError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed input data: missing columns, non-numeric cells, shape mismatches.
struct SchemaError : NisError {
  using NisError::NisError;
};

/// Numeric failure that survived every fallback.
struct NumericError : NisError {
  using NisError::NisError;
};

/// Basis size incompatible with the degree or the sample size.
struct InvalidBasisSize : NisError {
  using NisError::NisError;
};

/// Exposure sample too concentrated to place strictly interior knots.
struct DegenerateExposure : NumericError {
  using NumericError::NumericError;
};

/// Rank-deficient design encountered with the ridge fallback disabled.
struct SingularDesign : NumericError {
  using NumericError::NumericError;
};

/// Every lambda on the penalization grid failed to produce a fit.
struct AllLambdaFailed : NumericError {
  using NumericError::NumericError;
};

/// One regression sample: response, scalar exposure, covariate matrix.
struct Dataset {
  Vec y;                           // response, length n
  Vec w;                           // exposure, length n
  Mat x;                           // covariates, n x p (column j = covariate j)
  std::vector<std::string> names;  // covariate names, size p or empty

  int n() const { return static_cast<int>(y.size()); }
  int p() const { return static_cast<int>(x.cols()); }
};

/// Coefficients of a varying-coefficient model on a covariate subset:
/// f(w, x) = B(w)^T gamma0 + sum_m x[members[m]] * B(w)^T gammas.col(m).
struct VCCoef {
  std::vector<int> members;  // sorted covariate indices
  Vec gamma0;                // L intercept-function coefficients
  Mat gammas;                // L x |members|
};

}  // namespace nis
