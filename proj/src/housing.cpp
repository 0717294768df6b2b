#include "nis/housing.hpp"

#include "nis/csv.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

namespace nis {
namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

int find_column(const CsvTable& table, const std::string& name) {
  for (std::size_t c = 0; c < table.header.size(); ++c)
    if (lower(table.header[c]) == name) return static_cast<int>(c);
  throw SchemaError("housing file: column '" + name + "' not found");
}

Vec positive_log(const Vec& v, const std::string& name) {
  Vec out(v.size());
  for (int i = 0; i < v.size(); ++i) {
    if (!(v[i] > 0.0))
      throw SchemaError("housing file: column '" + name + "' must be positive to take logs (row " +
                        std::to_string(i + 1) + ")");
    out[i] = std::log(v[i]);
  }
  return out;
}

}  // namespace

Dataset load_housing(const std::string& path) {
  const CsvTable table = read_csv(path);
  auto col = [&](const std::string& name) { return table.values.col(find_column(table, name)); };

  const Vec medv = col("medv"), dis = col("dis"), rad = col("rad"), lstat = col("lstat");
  const Vec rm = col("rm"), nox = col("nox");

  Dataset data;
  data.y = positive_log(medv, "MEDV");
  data.w = positive_log(dis, "DIS");

  const int n = table.rows();
  data.x.resize(n, 13);
  data.x.col(0) = rm.array().square();
  data.x.col(1) = col("age");
  data.x.col(2) = data.w;
  data.x.col(3) = positive_log(rad, "RAD");
  data.x.col(4) = col("tax");
  data.x.col(5) = col("ptratio");
  data.x.col(6) = col("b");
  data.x.col(7) = positive_log(lstat, "LSTAT");
  data.x.col(8) = col("crim");
  data.x.col(9) = col("zn");
  data.x.col(10) = col("indus");
  data.x.col(11) = col("chas");
  data.x.col(12) = nox.array().square();
  data.names = {"rm2", "age", "ldis", "lrad", "tax",  "ptratio", "b",
                "llstat", "crim", "zn", "indus", "chas", "nox2"};
  return data;
}

Dataset augment_covariates(const Dataset& data, int p, double t, Rng& rng) {
  const int base = data.p();
  if (p < base)
    throw NisError("augmentation target p=" + std::to_string(p) + " below the " +
                   std::to_string(base) + " existing covariates");
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);

  Dataset out = data;
  out.x.conservativeResize(Eigen::NoChange, p);
  Vec shared(data.n());
  for (int i = 0; i < data.n(); ++i) shared[i] = uniform(rng);
  for (int j = base; j < p; ++j)
    for (int i = 0; i < data.n(); ++i)
      out.x(i, j) = (normal(rng) + t * shared[i]) / (1.0 + t);
  for (int j = base; j < p; ++j) out.names.push_back("art" + std::to_string(j - base + 1));
  return out;
}

Dataset take_rows(const Dataset& data, const std::vector<int>& rows) {
  Dataset out;
  out.names = data.names;
  out.y.resize(rows.size());
  out.w.resize(rows.size());
  out.x.resize(static_cast<int>(rows.size()), data.p());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const int r = rows[i];
    if (r < 0 || r >= data.n()) throw NisError("row index out of range");
    out.y[static_cast<int>(i)] = data.y[r];
    out.w[static_cast<int>(i)] = data.w[r];
    out.x.row(static_cast<int>(i)) = data.x.row(r);
  }
  return out;
}

}  // namespace nis
