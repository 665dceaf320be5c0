#include "rsnlab/stats.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/distributions/chi_squared.hpp>

#include "rsnlab/errors.hpp"
#include "rsnlab/rng.hpp"

namespace rsn {

namespace {

// KS of a sorted sample against precomputed cdf values at those points.
double ks_sorted(const std::vector<double>& cdf_at_sorted) {
  auto n = static_cast<double>(cdf_at_sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < cdf_at_sorted.size(); ++i) {
    double c = cdf_at_sorted[i];
    d = std::max(d, std::max((static_cast<double>(i) + 1.0) / n - c,
                             c - static_cast<double>(i) / n));
  }
  return d;
}

std::vector<double> bin_frequencies(const std::vector<double>& samples, double lo, double hi,
                                    int nbins) {
  std::vector<double> freq(static_cast<std::size_t>(nbins) + 1, 0.0);
  double w = (hi - lo) / nbins;
  for (double x : samples) {
    int b = (x >= lo && x < hi) ? static_cast<int>((x - lo) / w) : nbins;
    if (b > nbins) b = nbins;
    freq[static_cast<std::size_t>(b)] += 1.0;
  }
  for (double& f : freq) f /= static_cast<double>(samples.size());
  return freq;
}

double tv_from_freq(const std::vector<double>& freq, const std::vector<double>& masses) {
  double s = 0.0;
  for (std::size_t i = 0; i < freq.size(); ++i) s += std::abs(freq[i] - masses[i]);
  return 0.5 * s;
}

double stddev_of(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  double s2 = 0.0;
  for (double x : v) s2 += (x - mean) * (x - mean);
  return std::sqrt(s2 / (static_cast<double>(v.size()) - 1.0));
}

}  // namespace

double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf) {
  if (samples.empty()) throw DomainError("ks_statistic: empty sample");
  std::sort(samples.begin(), samples.end());
  std::vector<double> c(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) c[i] = cdf(samples[i]);
  return ks_sorted(c);
}

double ks_statistic_two(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw DomainError("ks_statistic_two: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

std::vector<double> model_bin_masses(const std::function<double(double)>& density, double lo,
                                     double hi, int nbins) {
  if (nbins < 1 || !(lo < hi)) throw DomainError("model_bin_masses: bad binning");
  std::vector<double> masses(static_cast<std::size_t>(nbins) + 1, 0.0);
  double w = (hi - lo) / nbins;
  double inside = 0.0;
  for (int b = 0; b < nbins; ++b) {
    // Composite Simpson with 4 panels per bin.
    double a = lo + b * w, h = w / 8.0, s = 0.0;
    for (int p = 0; p <= 8; ++p) {
      double weight = (p == 0 || p == 8) ? 1.0 : (p % 2 == 1 ? 4.0 : 2.0);
      s += weight * density(a + p * h);
    }
    masses[static_cast<std::size_t>(b)] = s * h / 3.0;
    inside += masses[static_cast<std::size_t>(b)];
  }
  masses[static_cast<std::size_t>(nbins)] = std::max(0.0, 1.0 - inside);
  return masses;
}

double tv_statistic(const std::vector<double>& samples, const std::vector<double>& masses,
                    double lo, double hi, int nbins) {
  if (samples.empty()) throw DomainError("tv_statistic: empty sample");
  return tv_from_freq(bin_frequencies(samples, lo, hi, nbins), masses);
}

StatWithSe ks_with_bootstrap(const std::vector<double>& samples,
                             const std::function<double(double)>& cdf, int replicates,
                             std::uint64_t seed) {
  if (samples.empty()) throw DomainError("ks_with_bootstrap: empty sample");
  std::vector<double> sorted = samples;
  std::sort(sorted.begin(), sorted.end());
  std::vector<double> c(sorted.size());
  for (std::size_t i = 0; i < sorted.size(); ++i) c[i] = cdf(sorted[i]);
  StatWithSe r;
  r.value = ks_sorted(c);
  Rng g = make_rng(seed, 0xb007ULL);
  std::vector<double> reps(static_cast<std::size_t>(replicates));
  std::vector<std::size_t> idx(sorted.size());
  for (int t = 0; t < replicates; ++t) {
    for (auto& ix : idx) ix = static_cast<std::size_t>(rng_below(g, sorted.size()));
    std::sort(idx.begin(), idx.end());
    std::vector<double> cc(idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i) cc[i] = c[idx[i]];
    reps[static_cast<std::size_t>(t)] = ks_sorted(cc);
  }
  r.se = stddev_of(reps);
  return r;
}

StatWithSe ks_two_with_bootstrap(const std::vector<double>& a, const std::vector<double>& b,
                                 int replicates, std::uint64_t seed) {
  StatWithSe r;
  r.value = ks_statistic_two(a, b);
  Rng g = make_rng(seed, 0xb007ULL);
  std::vector<double> reps(static_cast<std::size_t>(replicates));
  std::vector<double> ra(a.size()), rb(b.size());
  for (int t = 0; t < replicates; ++t) {
    for (auto& x : ra) x = a[rng_below(g, a.size())];
    for (auto& x : rb) x = b[rng_below(g, b.size())];
    reps[static_cast<std::size_t>(t)] = ks_statistic_two(ra, rb);
  }
  r.se = stddev_of(reps);
  return r;
}

StatWithSe tv_with_bootstrap(const std::vector<double>& samples,
                             const std::function<double(double)>& density, double lo, double hi,
                             int nbins, int replicates, std::uint64_t seed) {
  std::vector<double> masses = model_bin_masses(density, lo, hi, nbins);
  StatWithSe r;
  std::vector<double> freq = bin_frequencies(samples, lo, hi, nbins);
  r.value = tv_from_freq(freq, masses);
  Rng g = make_rng(seed, 0xb007ULL);
  std::vector<double> reps(static_cast<std::size_t>(replicates));
  std::vector<double> resample(samples.size());
  for (int t = 0; t < replicates; ++t) {
    for (auto& x : resample) x = samples[rng_below(g, samples.size())];
    reps[static_cast<std::size_t>(t)] = tv_from_freq(bin_frequencies(resample, lo, hi, nbins),
                                                     masses);
  }
  r.se = stddev_of(reps);
  return r;
}

StatWithSe mean_with_se(const std::vector<double>& samples) {
  if (samples.empty()) throw DomainError("mean_with_se: empty sample");
  StatWithSe r;
  double m = 0.0;
  for (double x : samples) m += x;
  r.value = m / static_cast<double>(samples.size());
  r.se = stddev_of(samples) / std::sqrt(static_cast<double>(samples.size()));
  return r;
}

double chi_square_pvalue(double stat, int dof) {
  if (dof < 1) throw DomainError("chi_square_pvalue: dof must be >= 1");
  boost::math::chi_squared dist(dof);
  return boost::math::cdf(boost::math::complement(dist, std::max(0.0, stat)));
}

}  // namespace rsn
