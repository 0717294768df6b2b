#include "nis/simgen.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace nis {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void validate(const SimSpec& spec) {
  if (spec.n < 1) throw NisError("simulation n must be positive");
  if (spec.p < 1) throw NisError("simulation p must be positive");
  const int truth = static_cast<int>(true_support(spec).size());
  if (spec.p < truth)
    throw NisError("simulation p smaller than the generator's true support (" +
                   std::to_string(truth) + ")");
  if (spec.example == Example::ex1) {
    if (spec.s < 1 || spec.s > 25)
      throw NisError("ex1 needs 1 <= s <= 25 for the correlated tail construction");
    if (spec.t1 != 0 || spec.t2 != 0) throw NisError("ex1 has no t1/t2 controls");
  }
}

std::vector<std::string> default_names(int p) {
  std::vector<std::string> names(p);
  for (int j = 0; j < p; ++j) names[j] = "x" + std::to_string(j + 1);
  return names;
}

// Coefficient functions evaluated at one exposure value.
void signal_ex2(double w, std::span<double> beta) {
  beta[0] = 5.0 * w;
  beta[1] = 3.0 * (2.0 * w - 1.0) * (2.0 * w - 1.0);
  beta[2] = 4.0 * std::sin(kTwoPi * w);
}

void signal_ex3(double w, std::span<double> beta) {
  beta[0] = 2.0;
  beta[1] = 3.0 * w;
  beta[2] = (w + 1.0) * (w + 1.0);
  beta[3] = 4.0 * std::sin(kTwoPi * w) / (2.0 - std::sin(kTwoPi * w));
}

void signal_ex4(double w, std::span<double> beta) {
  beta[0] = 3.0 * w;
  beta[1] = (w + 1.0) * (w + 1.0);
  beta[2] = (w - 2.0) * (w - 2.0) * (w - 2.0);
  beta[3] = 3.0 * std::sin(kTwoPi * w);
  beta[4] = std::exp(w);
  beta[5] = 2.0;
  beta[6] = 2.0;
  beta[7] = 3.0 * std::sqrt(w);
}

}  // namespace

Example example_from_string(const std::string& name) {
  if (name == "ex1") return Example::ex1;
  if (name == "ex2") return Example::ex2;
  if (name == "ex3") return Example::ex3;
  if (name == "ex4") return Example::ex4;
  throw NisError("unknown example '" + name + "' (expected ex1..ex4)");
}

std::string to_string(Example e) {
  switch (e) {
    case Example::ex1: return "ex1";
    case Example::ex2: return "ex2";
    case Example::ex3: return "ex3";
    case Example::ex4: return "ex4";
  }
  return "unknown";
}

std::vector<int> true_support(const SimSpec& spec) {
  int s = 0;
  switch (spec.example) {
    case Example::ex1: s = spec.s; break;
    case Example::ex2: s = 3; break;
    case Example::ex3: s = 4; break;
    case Example::ex4: s = 8; break;
  }
  std::vector<int> truth(s);
  for (int j = 0; j < s; ++j) truth[j] = j;
  return truth;
}

Dataset generate(const SimSpec& spec, Rng& rng) {
  validate(spec);
  const int n = spec.n, p = spec.p;
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);

  Dataset data;
  data.x.resize(n, p);
  data.w.resize(n);
  data.y.resize(n);
  data.names = default_names(p);

  switch (spec.example) {
    case Example::ex1: {
      // First min(p, 950) covariates iid standard normal; at p >= 951 the
      // remaining ones load on the true block: x_k = sum_j (-1)^j x_j/5 +
      // sqrt(1 - s/25) xi_k. Noise variance 3, exposure an independent
      // uniform that never enters the signal.
      const int iid_cols = std::min(p, 950);
      for (int j = 0; j < iid_cols; ++j)
        for (int i = 0; i < n; ++i) data.x(i, j) = normal(rng);
      const double resid_sd = std::sqrt(1.0 - spec.s / 25.0);
      for (int k = iid_cols; k < p; ++k) {
        for (int i = 0; i < n; ++i) {
          double common = 0.0;
          for (int j = 0; j < spec.s; ++j)
            common += (j % 2 == 0 ? 1.0 : -1.0) * data.x(i, j);
          data.x(i, k) = common / 5.0 + resid_sd * normal(rng);
        }
      }
      for (int i = 0; i < n; ++i) data.w[i] = uniform(rng);
      const double noise_sd = std::sqrt(3.0);
      for (int i = 0; i < n; ++i) {
        double signal = 0.0;
        for (int j = 0; j < spec.s; ++j)
          signal += (j % 2 == 0 ? 1.0 : -1.0) * data.x(i, j);
        data.y[i] = signal + noise_sd * normal(rng);
      }
      break;
    }
    case Example::ex2: {
      // X_j = (U_j + t1 U)/(1+t1), W = (U' + t2 U)/(1+t2), all uniforms.
      for (int j = 0; j < p; ++j)
        for (int i = 0; i < n; ++i) data.x(i, j) = uniform(rng);
      Vec shared(n), wbase(n);
      for (int i = 0; i < n; ++i) shared[i] = uniform(rng);
      for (int i = 0; i < n; ++i) wbase[i] = uniform(rng);
      for (int j = 0; j < p; ++j)
        for (int i = 0; i < n; ++i)
          data.x(i, j) = (data.x(i, j) + spec.t1 * shared[i]) / (1.0 + spec.t1);
      for (int i = 0; i < n; ++i)
        data.w[i] = (wbase[i] + spec.t2 * shared[i]) / (1.0 + spec.t2);
      double beta[3];
      for (int i = 0; i < n; ++i) {
        signal_ex2(data.w[i], beta);
        data.y[i] = beta[0] * data.x(i, 0) + beta[1] * data.x(i, 1) + beta[2] * data.x(i, 2) +
                    normal(rng);
      }
      break;
    }
    case Example::ex3:
    case Example::ex4: {
      // X_j = (Z_j + t1 U1)/(1+t1) with normal Z, W = (U2 + t2 U1)/(1+t2).
      for (int j = 0; j < p; ++j)
        for (int i = 0; i < n; ++i) data.x(i, j) = normal(rng);
      Vec shared(n), wbase(n);
      for (int i = 0; i < n; ++i) shared[i] = uniform(rng);
      for (int i = 0; i < n; ++i) wbase[i] = uniform(rng);
      for (int j = 0; j < p; ++j)
        for (int i = 0; i < n; ++i)
          data.x(i, j) = (data.x(i, j) + spec.t1 * shared[i]) / (1.0 + spec.t1);
      for (int i = 0; i < n; ++i)
        data.w[i] = (wbase[i] + spec.t2 * shared[i]) / (1.0 + spec.t2);
      const int s = spec.example == Example::ex3 ? 4 : 8;
      double beta[8];
      for (int i = 0; i < n; ++i) {
        if (spec.example == Example::ex3) signal_ex3(data.w[i], {beta, 4});
        else signal_ex4(data.w[i], {beta, 8});
        double signal = 0.0;
        for (int j = 0; j < s; ++j) signal += beta[j] * data.x(i, j);
        data.y[i] = signal + normal(rng);
      }
      break;
    }
  }
  return data;
}

Dataset generate_replicate(const SimSpec& spec, int replicate) {
  Rng rng(derive_seed(spec.seed, static_cast<std::uint64_t>(replicate)));
  return generate(spec, rng);
}

double snr_estimate(const SimSpec& spec, int mc) {
  validate(spec);
  Rng rng(derive_seed(spec.seed, 0x534e52));  // dedicated substream
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);

  double sum = 0.0, sumsq = 0.0;
  double noise_var = 1.0;
  for (int it = 0; it < mc; ++it) {
    double signal = 0.0;
    switch (spec.example) {
      case Example::ex1: {
        for (int j = 0; j < spec.s; ++j)
          signal += (j % 2 == 0 ? 1.0 : -1.0) * normal(rng);
        noise_var = 3.0;
        break;
      }
      case Example::ex2: {
        const double shared = uniform(rng);
        const double w = (uniform(rng) + spec.t2 * shared) / (1.0 + spec.t2);
        double beta[3];
        signal_ex2(w, beta);
        for (int j = 0; j < 3; ++j)
          signal += beta[j] * (uniform(rng) + spec.t1 * shared) / (1.0 + spec.t1);
        break;
      }
      case Example::ex3:
      case Example::ex4: {
        const int s = spec.example == Example::ex3 ? 4 : 8;
        const double shared = uniform(rng);
        const double w = (uniform(rng) + spec.t2 * shared) / (1.0 + spec.t2);
        double beta[8];
        if (spec.example == Example::ex3) signal_ex3(w, {beta, 4});
        else signal_ex4(w, {beta, 8});
        for (int j = 0; j < s; ++j)
          signal += beta[j] * (normal(rng) + spec.t1 * shared) / (1.0 + spec.t1);
        break;
      }
    }
    sum += signal;
    sumsq += signal * signal;
  }
  const double mean = sum / mc;
  const double var = sumsq / mc - mean * mean;
  return var / noise_var;
}

double median(std::vector<double> values) {
  if (values.empty()) throw NisError("median of an empty sample");
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

double robust_sd(std::vector<double> values) {
  if (values.size() < 2) throw NisError("robust_sd needs at least two values");
  std::sort(values.begin(), values.end());
  auto quartile = [&](double prob) {
    const double pos = prob * static_cast<double>(values.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(pos);
    if (lo + 1 >= values.size()) return values.back();
    const double frac = pos - static_cast<double>(lo);
    return values[lo] * (1.0 - frac) + values[lo + 1] * frac;
  };
  return (quartile(0.75) - quartile(0.25)) / 1.349;
}

SelMetrics selection_metrics(std::span<const int> selected, std::span<const int> truth) {
  SelMetrics m;
  for (const int j : selected) {
    if (std::find(truth.begin(), truth.end(), j) != truth.end()) ++m.tp;
    else ++m.fp;
  }
  return m;
}

double prediction_error(const Vec& predicted, const Vec& observed) {
  if (predicted.size() != observed.size())
    throw NisError("prediction_error length mismatch");
  return (predicted - observed).squaredNorm() / predicted.size();
}

ColumnScaling fit_scaling(const Mat& x) {
  const double n = static_cast<double>(x.rows());
  ColumnScaling sc;
  sc.mean = x.colwise().mean();
  sc.sd.resize(x.cols());
  for (int j = 0; j < x.cols(); ++j) {
    const double ss = (x.col(j).array() - sc.mean[j]).matrix().squaredNorm();
    const double sd = std::sqrt(ss / std::max(n - 1.0, 1.0));
    sc.sd[j] = (sd > 0.0 && std::isfinite(sd)) ? sd : 1.0;
  }
  return sc;
}

void apply_scaling(Mat& x, const ColumnScaling& scaling) {
  if (x.cols() != scaling.mean.size()) throw NisError("scaling width mismatch");
  for (int j = 0; j < x.cols(); ++j)
    x.col(j) = (x.col(j).array() - scaling.mean[j]) / scaling.sd[j];
}

}  // namespace nis
