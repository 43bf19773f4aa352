#pragma once

namespace asylecon::dist {

// Reference distribution functions used by the test statistics. Thin
// wrappers so the backing implementation stays swappable in one place;
// frozen-value tests pin the behavior independently of the backend.

double normal_cdf(double z);
double normal_quantile(double p);

double chi2_cdf(double x, int df);
double chi2_quantile(double p, int df);

// P(F <= x) for an F(df1, df2) variate; 0 for x <= 0.
double f_cdf(double x, int df1, int df2);

double t_cdf(double x, int df);

double binom_pmf(int k, int n, double p);

// Exact two-sided binomial test of k successes in n trials against
// probability p0: the sum of all outcome probabilities no larger than the
// observed one, the convention of the classic exact test.
double binom_test_two_sided(int k, int n, double p0);

}  // namespace asylecon::dist
