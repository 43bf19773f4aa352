#include "asylecon/dist.hpp"

#include <boost/math/distributions/binomial.hpp>
#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/fisher_f.hpp>
#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>

namespace asylecon::dist {

namespace bm = boost::math;

double normal_cdf(double z) { return bm::cdf(bm::normal_distribution<>(), z); }

double normal_quantile(double p) { return bm::quantile(bm::normal_distribution<>(), p); }

double chi2_cdf(double x, int df) {
    if (x <= 0.0) return 0.0;
    return bm::cdf(bm::chi_squared_distribution<>(df), x);
}

double chi2_quantile(double p, int df) {
    return bm::quantile(bm::chi_squared_distribution<>(df), p);
}

double f_cdf(double x, int df1, int df2) {
    if (x <= 0.0) return 0.0;
    return bm::cdf(bm::fisher_f_distribution<>(df1, df2), x);
}

double t_cdf(double x, int df) { return bm::cdf(bm::students_t_distribution<>(df), x); }

double binom_pmf(int k, int n, double p) {
    return bm::pdf(bm::binomial_distribution<>(n, p), k);
}

double binom_test_two_sided(int k, int n, double p0) {
    // Small n only; direct summation is exact and avoids tail conventions.
    const double observed = binom_pmf(k, n, p0);
    const double slack = observed * 1e-7;  // absorb rounding in pmf comparisons
    double total = 0.0;
    for (int i = 0; i <= n; ++i) {
        double pi = binom_pmf(i, n, p0);
        if (pi <= observed + slack) total += pi;
    }
    return total > 1.0 ? 1.0 : total;
}

}  // namespace asylecon::dist
