#pragma once

#include "nis/rng.hpp"
#include "nis/types.hpp"

#include <string>

namespace nis {

/// Loads a Boston-housing CSV (columns CRIM, ZN, INDUS, CHAS, NOX, RM, AGE,
/// DIS, RAD, TAX, PTRATIO, B, LSTAT, MEDV; case-insensitive) and assembles
/// the hedonic regression dataset: response log(MEDV), exposure log(DIS), and
/// 13 covariates [RM^2, AGE, log(DIS), log(RAD), TAX, PTRATIO, B,
/// log(LSTAT), CRIM, ZN, INDUS, CHAS, NOX^2]. Throws SchemaError on missing
/// columns or values outside the transforms' domains.
Dataset load_housing(const std::string& path);

/// Appends p - data.p() artificial covariates x_j = (z_j + t u)/(1 + t) with
/// z_j iid standard normal and one shared uniform u per row.
Dataset augment_covariates(const Dataset& data, int p, double t, Rng& rng);

/// Row subset of a dataset (clones the selected rows in order).
Dataset take_rows(const Dataset& data, const std::vector<int>& rows);

}  // namespace nis
