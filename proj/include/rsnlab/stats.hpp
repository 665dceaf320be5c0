#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace rsn {

struct StatWithSe {
  double value = 0.0;
  double se = 0.0;
};

// sup_x |F_emp(x) - cdf(x)|; cdf must be nondecreasing.
double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf);

double ks_statistic_two(std::vector<double> a, std::vector<double> b);

// Masses of nbins equal bins on [lo, hi] under the density (Simpson per bin),
// plus one trailing cell for the complement of [lo, hi].
std::vector<double> model_bin_masses(const std::function<double(double)>& density, double lo,
                                     double hi, int nbins);

// Half L1 distance between empirical bin frequencies (with the outside cell)
// and the model masses.
double tv_statistic(const std::vector<double>& samples, const std::vector<double>& masses,
                    double lo, double hi, int nbins);

// Nonparametric bootstrap standard errors; deterministic in seed.
StatWithSe ks_with_bootstrap(const std::vector<double>& samples,
                             const std::function<double(double)>& cdf, int replicates,
                             std::uint64_t seed);
StatWithSe ks_two_with_bootstrap(const std::vector<double>& a, const std::vector<double>& b,
                                 int replicates, std::uint64_t seed);
StatWithSe tv_with_bootstrap(const std::vector<double>& samples,
                             const std::function<double(double)>& density, double lo, double hi,
                             int nbins, int replicates, std::uint64_t seed);

StatWithSe mean_with_se(const std::vector<double>& samples);

// Upper-tail p-value of the chi-square distribution with dof degrees of
// freedom.
double chi_square_pvalue(double stat, int dof);

}  // namespace rsn
