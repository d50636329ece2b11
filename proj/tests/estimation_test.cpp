#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "rs/error.hpp"
#include "rs/estimation.hpp"
#include "rs/synth.hpp"

using namespace rs;

namespace {

// Direct enumeration of every window: S_j^i = a[i] + ... + a[i+j-1].
std::vector<std::vector<double>> enumerate_windows(const std::vector<Seconds>& a, std::size_t k) {
  std::vector<std::vector<double>> sums(k);
  for (std::size_t i = 0; i + k < a.size(); ++i) {
    for (std::size_t j = 1; j <= k; ++j) {
      double s = 0.0;
      for (std::size_t l = 0; l < j; ++l) s += static_cast<double>(a[i + l]);
      sums[j - 1].push_back(s);
    }
  }
  return sums;
}

Density delta_at(std::size_t bin, std::size_t bins, double width = 1.0) {
  Density d;
  d.bin_width = width;
  d.values.assign(bins, 0.0);
  d.values[bin] = 1.0;
  return d;
}

double mean_abs_rel_dev(const RenewalDensityEstimate& r, double end, double level) {
  const auto n = static_cast<std::size_t>(end / r.bin_width);
  const std::size_t lo = n / 10, hi = n - n / 10;
  double s = 0.0;
  for (std::size_t i = lo; i < hi; ++i) s += std::abs(r.values[i] - level);
  return s / static_cast<double>(hi - lo) / level;
}

}  // namespace

TEST(PartialSums, HandTrace) {
  const auto t = partial_sums(InterArrivals{{1, 2, 3, 4}}, 2);
  EXPECT_EQ(t.order(1), (std::vector<double>{1, 2}));
  EXPECT_EQ(t.order(2), (std::vector<double>{3, 5}));
  EXPECT_EQ(t.windows(), 2u);
}

TEST(PartialSums, ConstantSequence) {
  const InterArrivals a{std::vector<Seconds>(20, 3)};
  const auto t = partial_sums(a, 6);
  for (std::size_t j = 1; j <= 6; ++j) {
    EXPECT_EQ(t.order(j), std::vector<double>(14, 3.0 * static_cast<double>(j)));
  }
}

TEST(PartialSums, OrderMustLeaveWindows) {
  for (std::size_t k : {4u, 5u}) {
    try {
      partial_sums(InterArrivals{{1, 2, 3, 4}}, k);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::insufficient_data);
    }
  }
  EXPECT_THROW(partial_sums(InterArrivals{{1, 2}}, 0), Error);
}

TEST(PartialSums, MatchesEnumerationAndInvariants) {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<Seconds> gap(0, 20);
  std::uniform_int_distribution<std::size_t> len(2, 50);
  for (int trial = 0; trial < 100; ++trial) {
    InterArrivals a;
    a.values.resize(len(rng));
    for (auto& v : a.values) v = gap(rng);
    const std::size_t k = std::uniform_int_distribution<std::size_t>(1, std::min<std::size_t>(10, a.size() - 1))(rng);
    const auto t = partial_sums(a, k);
    EXPECT_EQ(t.sums, enumerate_windows(a.values, k));
    for (std::size_t j = 1; j <= k; ++j) {
      EXPECT_EQ(t.order(j).size(), a.size() - k);
      if (j > 1) {
        for (std::size_t i = 0; i < t.windows(); ++i) EXPECT_GE(t.order(j)[i], t.order(j - 1)[i]);
      }
    }
  }
}

TEST(EmpiricalRd, DeterministicGaps) {
  const double d = 4.0;
  const InterArrivals a{std::vector<Seconds>(50, 4)};
  const auto r = empirical_rd(partial_sums(a, 3), 1.0, 20.0);
  for (std::size_t i = 0; i < r.bins(); ++i) {
    const bool spike = i == 4 || i == 8 || i == 12;
    EXPECT_EQ(r.values[i], spike ? 1.0 : 0.0) << i;
  }
  EXPECT_EQ(r.untruncated_end, 3 * d);
}

TEST(EmpiricalRd, SingleOrderIsScaledHistogram) {
  const InterArrivals a{{0, 1, 1, 3, 2, 0, 5, 1}};
  const auto r = empirical_rd(partial_sums(a, 1), 2.0, 8.0);
  // order 1 sees a[0..6] = {0,1,1,3,2,0,5}: bins [0,2) 4, [2,4) 2, [4,6) 1
  EXPECT_EQ(r.values, (std::vector<double>{4.0 / 7 / 2, 2.0 / 7 / 2, 1.0 / 7 / 2, 0.0}));
}

TEST(EmpiricalRd, StreamingMatchesTable) {
  const auto s = gen_poisson(3.0, 5000, 9);
  const auto a = inter_arrivals(s);
  for (std::size_t k : {1u, 7u, 40u}) {
    const double t_max = empirical_grid_end(a, k, 1.0);
    const auto from_table = empirical_rd(partial_sums(a, k), 1.0, t_max);
    const auto streamed = empirical_rd(a, k, 1.0, t_max);
    EXPECT_EQ(from_table.values, streamed.values);
    EXPECT_EQ(from_table.untruncated_end, streamed.untruncated_end);
    EXPECT_DOUBLE_EQ(streamed.source_rate, a.rate());
  }
}

TEST(EmpiricalRd, EmptyOrderNamesOrder) {
  // order 2 sums are all >= 10, outside [0, 5)
  const InterArrivals a{{5, 5, 5, 5}};
  try {
    empirical_rd(partial_sums(a, 2), 1.0, 6.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::insufficient_data);
    EXPECT_NE(std::string(e.what()).find("order 2"), std::string::npos);
  }
}

TEST(EmpiricalRd, PoissonIsFlatAtInverseMean) {
  const double mean = 2.0;
  const auto a = inter_arrivals(gen_poisson(mean, 100000, 1234));
  const std::size_t k = 100;
  const auto r = empirical_rd(a, k, 1.0, empirical_grid_end(a, k, 1.0));
  EXPECT_LT(mean_abs_rel_dev(r, r.untruncated_end, 1.0 / mean), 0.10);
  for (double v : r.values) EXPECT_GE(v, 0.0);
}

TEST(FirstOrderPdf, Examples) {
  const auto f = first_order_pdf(InterArrivals{{0, 0, 2}}, 1.0, 3.0);
  ASSERT_EQ(f.values.size(), 3u);
  EXPECT_DOUBLE_EQ(f.values[0], 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(f.values[1], 0.0);
  EXPECT_DOUBLE_EQ(f.values[2], 1.0 / 3.0);
  try {
    first_order_pdf(InterArrivals{{7, 9}}, 1.0, 3.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::empty_density);
  }
}

TEST(Convolve, Examples) {
  const auto d = convolve(delta_at(2, 5), delta_at(3, 5));
  EXPECT_EQ(d.values.size(), 9u);
  for (std::size_t i = 0; i < d.values.size(); ++i) EXPECT_EQ(d.values[i], i == 5 ? 1.0 : 0.0);

  Density b;
  b.values = {0.5, 0.5};
  EXPECT_EQ(convolve(b, b).values, (std::vector<double>{0.25, 0.5, 0.25}));
}

TEST(Convolve, IdentityMassAndAssociativity) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    Density f;
    f.values.resize(3 + static_cast<std::size_t>(trial));
    double s = 0.0;
    for (auto& v : f.values) s += v = u(rng) < 0.3 ? 0.0 : u(rng);
    for (auto& v : f.values) v /= s;

    const auto id = convolve(f, delta_at(0, 4), f.bins());
    EXPECT_EQ(id.values, f.values);

    const auto ff = convolve(f, f);
    const double mass = std::accumulate(ff.values.begin(), ff.values.end(), 0.0);
    EXPECT_NEAR(mass, 1.0, 1e-12);

    const std::size_t grid = f.bins() * 2;
    const auto left = convolve(convolve(f, f, grid), f, grid);
    const auto right = convolve(f, convolve(f, f, grid), grid);
    ASSERT_EQ(left.values.size(), right.values.size());
    for (std::size_t i = 0; i < left.values.size(); ++i) EXPECT_NEAR(left.values[i], right.values[i], 1e-12);
  }
}

TEST(Convolve, GridMismatch) {
  try {
    convolve(delta_at(0, 3, 1.0), delta_at(0, 3, 2.0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::grid_mismatch);
  }
}

TEST(ConvolutionRd, DeltaSpikes) {
  const auto r = convolution_rd(delta_at(3, 20), 3);
  for (std::size_t i = 0; i < r.bins(); ++i) {
    const bool spike = i == 3 || i == 6 || i == 9;
    EXPECT_EQ(r.values[i], spike ? 1.0 : 0.0) << i;
  }
}

TEST(ConvolutionRd, SingleTerm) {
  Density f;
  f.bin_width = 2.0;
  f.values = {0.1, 0.6, 0.3, 0.0};
  const auto r = convolution_rd(f, 1);
  EXPECT_EQ(r.values, (std::vector<double>{0.05, 0.3, 0.15, 0.0}));
  EXPECT_THROW(convolution_rd(f, 0), Error);
}

TEST(ConvolutionRd, MatchesMonteCarloPartialSums) {
  // Lattice data (whole seconds, width 1), so convolving bin masses is exact
  // and any disagreement is sampling noise.
  const double mean = 5.0;
  const std::size_t k = 50;
  const auto draw = [mean](std::mt19937_64& rng) {
    std::exponential_distribution<double> e(1.0 / mean);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    return std::floor(e(rng) + u(rng));
  };

  const auto bins = static_cast<std::size_t>(std::ceil(1.5 * static_cast<double>(k) * mean));
  const double t_max = static_cast<double>(bins);
  const auto conv_from = [&](std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    InterArrivals a;
    a.values.resize(100000);
    for (auto& v : a.values) v = static_cast<Seconds>(draw(rng));
    return convolution_rd(first_order_pdf(a, 1.0, t_max), k);
  };
  const auto r = conv_from(1);

  // spread of the estimate itself across independent first-order samples
  constexpr int kRepeats = 12;
  std::vector<double> m1(bins, 0.0), m2(bins, 0.0);
  for (int rep = 0; rep < kRepeats; ++rep) {
    const auto other = conv_from(100 + static_cast<std::uint64_t>(rep));
    for (std::size_t i = 0; i < bins; ++i) {
      m1[i] += other.values[i];
      m2[i] += other.values[i] * other.values[i];
    }
  }

  // oracle: S_n from n fresh draws per replicate
  constexpr std::size_t kReplicates = 100000;
  std::vector<double> x1(bins, 0.0), x2(bins, 0.0);
  std::vector<double> counts(bins);
  std::mt19937_64 rng(777);
  for (std::size_t rep = 0; rep < kReplicates; ++rep) {
    std::fill(counts.begin(), counts.end(), 0.0);
    double s = 0.0;
    for (std::size_t n = 0; n < k; ++n) {
      s += draw(rng);
      if (s < t_max) counts[static_cast<std::size_t>(s)] += 1.0;
    }
    for (std::size_t i = 0; i < bins; ++i) {
      x1[i] += counts[i];
      x2[i] += counts[i] * counts[i];
    }
  }

  std::size_t within = 0, checked = 0;
  double worst = 0.0;
  for (std::size_t i = 0; i < bins; ++i) {
    const double mc = x1[i] / kReplicates;
    const double mc_var = (x2[i] / kReplicates - mc * mc) / kReplicates;
    const double cm = m1[i] / kRepeats;
    const double conv_var = std::max(0.0, (m2[i] / kRepeats - cm * cm)) * kRepeats / (kRepeats - 1);
    const double se = std::sqrt(mc_var + conv_var);
    const double diff = std::abs(r.values[i] - mc);
    if (se == 0.0) {
      EXPECT_NEAR(diff, 0.0, 1e-12) << i;
      continue;
    }
    ++checked;
    within += diff <= 3.0 * se;
    worst = std::max(worst, diff / se);
  }
  ASSERT_GT(checked, bins / 2);
  EXPECT_GE(static_cast<double>(within), 0.99 * static_cast<double>(checked));
  EXPECT_LT(worst, 5.0);
}

TEST(Estimates, IidAgreement) {
  const double mean = 2.0;
  const auto a = inter_arrivals(gen_poisson(mean, 100000, 99));
  const std::size_t k = 100;
  const auto emp = empirical_rd(a, k, 1.0, empirical_grid_end(a, k, 1.0));
  const double t_conv = convolution_grid_end(a, k, 1.0);
  const auto conv = convolution_rd(first_order_pdf(a, 1.0, t_conv), k);
  const std::size_t n = std::min(emp.bins(), conv.bins());
  const std::size_t lo = n / 10, hi = n - n / 10;
  double s = 0.0;
  for (std::size_t i = lo; i < hi; ++i) s += std::abs(emp.values[i] - conv.values[i]);
  EXPECT_LT(s / static_cast<double>(hi - lo), 0.1 / mean);
}

TEST(Defaults, MaxOrder) {
  EXPECT_EQ(default_max_order(100000), 1000u);
  EXPECT_EQ(default_max_order(5000), 500u);
  EXPECT_EQ(default_max_order(5), 1u);
}

TEST(Defaults, GridEnds) {
  const InterArrivals a{std::vector<Seconds>(200, 2)};
  EXPECT_EQ(empirical_grid_end(a, 10, 1.0), 21.0);  // every S_10 = 20, bin [20,21) included
  EXPECT_EQ(convolution_grid_end(a, 10, 1.0), 30.0);
  EXPECT_EQ(convolution_grid_end(a, 10, 4.0), 32.0);
}
