#pragma once

#include "nis/marginal_screen.hpp"
#include "nis/types.hpp"

#include <span>
#include <string>
#include <vector>

namespace nis {

/// SCAD penalty value p_lambda(x) for x >= 0, with the usual three regimes.
double scad_penalty(double x, double lambda, double a = 3.7);

/// SCAD penalty derivative p'_lambda(x) for x >= 0.
double scad_derivative(double x, double lambda, double a = 3.7);

/// Empirical Gram matrix (1/n) B^T B of a basis design.
Mat gram_matrix(const BasisDesign& bd);

/// Group norm ||gamma||_B = sqrt(gamma^T G gamma).
double group_norm(const Vec& gamma, const Mat& gram);

struct ScadConfig {
  double a = 3.7;
  int num_lambda = 30;
  double lambda_min_ratio = 0.01;
  std::vector<double> lambda_grid;  // explicit grid; overrides the automatic one
  int max_iter = 50;
  double tol = 1e-6;         // relative objective-change convergence
  double drop_ratio = 1e-4;  // permanent group drop below drop_ratio * initial norm
  double norm_floor = 1e-10; // floor inside the quadratic-approximation weights
  int workers = 0;           // parallel lambda sweep
  bool record_objectives = false;
};

/// One quadratic-approximation descent at a fixed lambda.
struct LqaFit {
  VCCoef coef;        // surviving groups only
  Vec fitted;
  double rss_mean = 0;    // ||Y - fitted||^2_n
  double objective = 0;   // rss_mean + sum of group penalties
  std::vector<double> objectives;  // objective after init and each iteration
  int iterations = 0;
  bool converged = false;
  bool failed = false;
  std::string failure;
};

/// Runs the local-quadratic-approximation loop for `lambda`, starting from the
/// unpenalized joint fit on `candidates` (provided as `init` so the lambda
/// sweep shares one initial fit).
LqaFit lqa_solve(const Vec& y, const BasisDesign& bd, const Mat& x,
                 std::span<const int> candidates, const VCCoef& init, double lambda,
                 const ScadConfig& cfg);

/// Group-SCAD fit with BIC-selected lambda.
struct ScadModel {
  VCCoef coef;          // selected groups and their coefficient functions
  Vec fitted;
  double lambda = 0;
  double bic = 0;
  double sigma2 = 0;    // RSS/n at the selected lambda
  std::vector<double> lambda_grid;            // descending
  std::vector<double> bic_curve;              // NaN where the lambda failed
  std::vector<std::vector<double>> objective_curves;  // per lambda, if recorded
};

/// Fits the penalized varying-coefficient model on `candidates` over a
/// descending lambda grid, selecting lambda by BIC (ties broken toward the
/// larger lambda). The intercept function is never penalized. An empty
/// candidate set yields the intercept-only model. Throws AllLambdaFailed when
/// no grid point produces a usable fit.
ScadModel fit_group_scad(const Vec& y, const BasisDesign& bd, const Mat& x,
                         std::span<const int> candidates, const ScadConfig& cfg = {});

}  // namespace nis
