#pragma once

namespace ara {

/// Regularized incomplete beta I_x(a, b), continued-fraction evaluation.
/// `one_minus_x` is passed separately so callers can supply it without
/// cancellation (the t CDF computes both from x^2 and dof).
double regularized_incomplete_beta(double a, double b, double x, double one_minus_x);
double regularized_incomplete_beta(double a, double b, double x);

/// Standard normal CDF.
double normal_cdf(double x) noexcept;

/// Student-t distribution with fixed degrees of freedom. Precomputes the
/// log-beta normaliser so repeated CDF calls in hot loops stay cheap.
class StudentT {
public:
    explicit StudentT(double dof);

    double dof() const noexcept { return dof_; }
    double cdf(double x) const;
    double pdf(double x) const;

private:
    double dof_;
    double log_beta_;  // log B(dof/2, 1/2)
};

/// Pr(T <= x) for T ~ t(dof). Throws std::domain_error when dof <= 0.
double student_t_cdf(double x, double dof);

}  // namespace ara
