#include "casimir/stats.hpp"

#include "casimir/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace casimir
{

namespace
{

constexpr double cf_tolerance = 1e-15;
constexpr int cf_max_iterations = 100000;
constexpr double tiny = 1e-300;

// Lentz evaluation of the incomplete-beta continued fraction.
double beta_continued_fraction(double a, double b, double x)
{
   const double qab = a + b;
   const double qap = a + 1.0;
   const double qam = a - 1.0;
   double c = 1.0;
   double d = 1.0 - qab * x / qap;
   if (std::abs(d) < tiny)
   {
      d = tiny;
   }
   d = 1.0 / d;
   double h = d;
   for (int m = 1; m <= cf_max_iterations; ++m)
   {
      const double m2 = 2.0 * m;
      double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
      d = 1.0 + aa * d;
      if (std::abs(d) < tiny)
      {
         d = tiny;
      }
      c = 1.0 + aa / c;
      if (std::abs(c) < tiny)
      {
         c = tiny;
      }
      d = 1.0 / d;
      h *= d * c;

      aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
      d = 1.0 + aa * d;
      if (std::abs(d) < tiny)
      {
         d = tiny;
      }
      c = 1.0 + aa / c;
      if (std::abs(c) < tiny)
      {
         c = tiny;
      }
      d = 1.0 / d;
      const double del = d * c;
      h *= del;
      if (std::abs(del - 1.0) < cf_tolerance)
      {
         return h;
      }
   }
   throw NumericalError("incomplete beta continued fraction did not converge");
}

// I_x(a, b) given both x and y = 1 - x.
double incomplete_beta(double a, double b, double x, double y)
{
   if (x <= 0.0)
   {
      return 0.0;
   }
   if (y <= 0.0)
   {
      return 1.0;
   }
   const double front = std::exp(std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                                 a * std::log(x) + b * std::log(y));
   if (x < (a + 1.0) / (a + b + 2.0))
   {
      return front * beta_continued_fraction(a, b, x) / a;
   }
   return 1.0 - front * beta_continued_fraction(b, a, y) / b;
}

} // namespace

SampleSummary::SampleSummary(long count, double m, double s) : n(count), mean(m), std_dev(s)
{
   if (n < 2)
   {
      throw InputError("a sample needs n >= 2");
   }
   if (!(std_dev >= 0.0) || !std::isfinite(std_dev) || !std::isfinite(mean))
   {
      throw InputError("sample mean must be finite and std_dev >= 0");
   }
}

SampleSummary SampleSummary::from_observations(std::span<const double> values)
{
   const auto n = static_cast<long>(values.size());
   if (n < 2)
   {
      throw InputError("a sample needs at least 2 observations");
   }
   const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
   double ss = 0.0;
   for (double v : values)
   {
      ss += (v - mean) * (v - mean);
   }
   return SampleSummary(n, mean, std::sqrt(ss / (n - 1)));
}

double regularized_incomplete_beta(double a, double b, double x)
{
   if (!(a > 0.0) || !(b > 0.0) || !(x >= 0.0 && x <= 1.0))
   {
      throw DomainError("incomplete beta needs a, b > 0 and 0 <= x <= 1");
   }
   return incomplete_beta(a, b, x, 1.0 - x);
}

double student_t_sf(double t, double df)
{
   if (!(df > 0.0))
   {
      throw DomainError("degrees of freedom must be > 0");
   }
   if (std::isnan(t))
   {
      throw DomainError("t statistic is NaN");
   }
   if (t < 0.0)
   {
      return 1.0 - student_t_sf(-t, df);
   }
   if (t == 0.0)
   {
      return 0.5;
   }
   // P(T > t) = I_x(df/2, 1/2) / 2 with x = df / (df + t^2); 1 - x is formed
   // directly so neither tail loses digits.
   const double t2 = t * t;
   return 0.5 * incomplete_beta(0.5 * df, 0.5, df / (df + t2), t2 / (df + t2));
}

TTestResult welch_t_test(const SampleSummary& a, const SampleSummary& b)
{
   const double va = a.std_dev * a.std_dev / static_cast<double>(a.n);
   const double vb = b.std_dev * b.std_dev / static_cast<double>(b.n);
   const double v = va + vb;
   if (!(v > 0.0))
   {
      throw InputError("both samples have zero variance; the t statistic is undefined");
   }
   const double t = (a.mean - b.mean) / std::sqrt(v);
   const double ma = static_cast<double>(a.n - 1);
   const double mb = static_cast<double>(b.n - 1);
   // Equal variance terms reduce to an integer expression; keeps df = 2(n-1)
   // exact for equal n.
   const double df =
      va == vb ? 4.0 * ma * mb / (ma + mb) : v * v / (va * va / ma + vb * vb / mb);
   const double p = (t == 0.0) ? 1.0 : std::min(1.0, 2.0 * student_t_sf(std::abs(t), df));
   return {t, df, p};
}

} // namespace casimir
