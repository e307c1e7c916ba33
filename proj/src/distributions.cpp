#include "cointkit/distributions.hpp"

#include <cmath>
#include <limits>

#include "cointkit/errors.hpp"

namespace cointkit {

namespace {

// Series expansion of P(a, x), valid for x < a + 1.
double gamma_p_series(double a, double x) {
    const double eps = std::numeric_limits<double>::epsilon();
    double ap = a;
    double del = 1.0 / a;
    double sum = del;
    for (int i = 0; i < 10000; ++i) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::fabs(del) < std::fabs(sum) * eps)
            return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
    }
    throw Error(errc::invalid_value, "incomplete gamma series did not converge");
}

// Continued fraction for Q(a, x), valid for x >= a + 1 (modified Lentz).
double gamma_q_cf(double a, double x) {
    const double eps = std::numeric_limits<double>::epsilon();
    const double fpmin = std::numeric_limits<double>::min() / eps;
    double b = x + 1.0 - a;
    double c = 1.0 / fpmin;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 10000; ++i) {
        double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < fpmin) d = fpmin;
        c = b + an / c;
        if (std::fabs(c) < fpmin) c = fpmin;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) <= eps)
            return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
    }
    throw Error(errc::invalid_value, "incomplete gamma continued fraction did not converge");
}

// Continued fraction for the incomplete beta (modified Lentz).
double beta_cf(double a, double b, double x) {
    const double eps = std::numeric_limits<double>::epsilon();
    const double fpmin = std::numeric_limits<double>::min() / eps;
    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < fpmin) d = fpmin;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= 10000; ++m) {
        int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < fpmin) d = fpmin;
        c = 1.0 + aa / c;
        if (std::fabs(c) < fpmin) c = fpmin;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < fpmin) d = fpmin;
        c = 1.0 + aa / c;
        if (std::fabs(c) < fpmin) c = fpmin;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) <= eps) return h;
    }
    throw Error(errc::invalid_value, "incomplete beta continued fraction did not converge");
}

}  // namespace

double gamma_p(double a, double x) {
    if (a <= 0.0 || x < 0.0)
        throw Error(errc::invalid_value, "gamma_p requires a > 0 and x >= 0");
    if (x == 0.0) return 0.0;
    if (x < a + 1.0) return gamma_p_series(a, x);
    return 1.0 - gamma_q_cf(a, x);
}

double gamma_q(double a, double x) {
    if (a <= 0.0 || x < 0.0)
        throw Error(errc::invalid_value, "gamma_q requires a > 0 and x >= 0");
    if (x == 0.0) return 1.0;
    if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
    return gamma_q_cf(a, x);
}

double beta_i(double a, double b, double x) {
    if (a <= 0.0 || b <= 0.0 || x < 0.0 || x > 1.0)
        throw Error(errc::invalid_value, "beta_i requires a, b > 0 and x in [0, 1]");
    if (x == 0.0) return 0.0;
    if (x == 1.0) return 1.0;
    double front = std::exp(std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                            a * std::log(x) + b * std::log1p(-x));
    if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_cf(a, b, x) / a;
    return 1.0 - front * beta_cf(b, a, 1.0 - x) / b;
}

double chi_sq_survival(double x, int df) {
    if (df < 1) throw Error(errc::invalid_value, "chi_sq_survival requires df >= 1");
    if (x < 0.0) throw Error(errc::invalid_value, "chi_sq_survival requires x >= 0");
    return gamma_q(0.5 * static_cast<double>(df), 0.5 * x);
}

double f_survival(double x, int df1, int df2) {
    if (df1 < 1 || df2 < 1) throw Error(errc::invalid_value, "f_survival requires df >= 1");
    if (x < 0.0) throw Error(errc::invalid_value, "f_survival requires x >= 0");
    if (x == 0.0) return 1.0;
    double d1 = df1, d2 = df2;
    return beta_i(0.5 * d2, 0.5 * d1, d2 / (d2 + d1 * x));
}

}  // namespace cointkit
