#pragma once

#include <span>

// Unpaired two-sample t-test with Satterthwaite degrees of freedom.
namespace casimir
{

struct SampleSummary
{
   long n;
   double mean;
   double std_dev; // n - 1 normalization

   SampleSummary(long n, double mean, double std_dev);

   /// Summary of raw observations, sample (n - 1) standard deviation.
   static SampleSummary from_observations(std::span<const double> values);
};

struct TTestResult
{
   double t_statistic;
   double degrees_of_freedom;
   double p_two_sided;
};

/// Regularized incomplete beta I_x(a, b), continued fraction with the
/// symmetry switch I_x(a, b) = 1 - I_{1-x}(b, a).
double regularized_incomplete_beta(double a, double b, double x);

/// P(T > t) for Student's t with (possibly non-integer) df.
double student_t_sf(double t, double df);

/// Two-sided Welch test of mean(a) == mean(b). Throws InputError when both
/// samples have zero spread.
TTestResult welch_t_test(const SampleSummary& a, const SampleSummary& b);

} // namespace casimir
