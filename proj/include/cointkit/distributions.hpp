#pragma once

namespace cointkit {

/// Regularized lower incomplete gamma P(a, x).
double gamma_p(double a, double x);

/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x).
double gamma_q(double a, double x);

/// Regularized incomplete beta I_x(a, b).
double beta_i(double a, double b, double x);

/// P(chi^2_df > x). Absolute accuracy better than 1e-10 on x >= 0, df >= 1.
double chi_sq_survival(double x, int df);

/// P(F_{df1,df2} > x).
double f_survival(double x, int df1, int df2);

}  // namespace cointkit
