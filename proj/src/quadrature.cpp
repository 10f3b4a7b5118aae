#include "risopt/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "risopt/errors.hpp"

namespace risopt {
namespace {

// Implicit-shift QL iteration for a symmetric tridiagonal matrix, tracking the
// first row of the eigenvector matrix (Golub-Welsch). d: diagonal, e:
// subdiagonal (e[n-1] ignored), z: starts as the first unit vector. On return
// d holds eigenvalues and z[i] the first component of the i-th eigenvector.
void imtqlx(std::vector<double>& d, std::vector<double>& e, std::vector<double>& z) {
    const int n = static_cast<int>(d.size());
    if (n == 1) return;
    const double eps = std::numeric_limits<double>::epsilon();
    const int max_iter = 40;
    e[n - 1] = 0.0;
    for (int l = 0; l < n; ++l) {
        int iter = 0;
        for (;;) {
            int m = l;
            while (m < n - 1) {
                if (std::abs(e[m]) <= eps * (std::abs(d[m]) + std::abs(d[m + 1]))) break;
                ++m;
            }
            if (m == l) break;
            if (++iter > max_iter)
                throw numerical_error("gauss_laguerre: eigenvalue iteration failed to converge");
            double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            double r = std::hypot(g, 1.0);
            g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
            double s = 1.0, c = 1.0, p = 0.0;
            for (int i = m - 1; i >= l; --i) {
                double f = s * e[i];
                double b = c * e[i];
                if (std::abs(f) >= std::abs(g)) {
                    c = g / f;
                    r = std::hypot(c, 1.0);
                    e[i + 1] = f * r;
                    s = 1.0 / r;
                    c *= s;
                } else {
                    s = f / g;
                    r = std::hypot(s, 1.0);
                    e[i + 1] = g * r;
                    c = 1.0 / r;
                    s *= c;
                }
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                f = z[i + 1];
                z[i + 1] = s * z[i] + c * f;
                z[i] = c * z[i] - s * f;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
}

}  // namespace

QuadratureRule gauss_laguerre(int n) {
    if (n < 1) throw numerical_error("gauss_laguerre: order must be >= 1");
    // Jacobi matrix of the Laguerre polynomials (alpha = 0):
    // diagonal 2i+1, subdiagonal i; zeroth moment of e^-x is 1.
    std::vector<double> d(n), e(n, 0.0), z(n, 0.0);
    for (int i = 0; i < n; ++i) d[i] = 2.0 * i + 1.0;
    for (int i = 0; i < n - 1; ++i) e[i] = static_cast<double>(i + 1);
    z[0] = 1.0;
    imtqlx(d, e, z);

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return d[a] < d[b]; });

    QuadratureRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        rule.nodes[i] = d[order[i]];
        rule.weights[i] = z[order[i]] * z[order[i]];
    }
    return rule;
}

const QuadratureRule& gauss_laguerre_96() {
    static const QuadratureRule rule = gauss_laguerre(96);
    return rule;
}

double average_over_exponential(const std::function<double(double)>& f, double mean,
                                const QuadratureRule& rule) {
    if (mean < 0.0) throw numerical_error("average_over_exponential: negative mean");
    if (mean == 0.0) return f(0.0);
    double acc = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        acc += rule.weights[i] * f(mean * rule.nodes[i]);
    return acc;
}

double average_over_exponential_trapezoid(const std::function<double(double)>& f, double mean,
                                          double abs_tol, double t_max) {
    if (mean == 0.0) return f(0.0);
    auto g = [&](double t) { return std::exp(-t) * f(mean * t); };
    // Iteratively doubled trapezoid; the integrand is smooth and decays like
    // e^-t, so truncation at t_max is far below abs_tol for bounded f.
    std::size_t intervals = 64;
    double h = t_max / static_cast<double>(intervals);
    double sum = 0.5 * (g(0.0) + g(t_max));
    for (std::size_t i = 1; i < intervals; ++i) sum += g(h * static_cast<double>(i));
    double prev = sum * h;
    for (int level = 0; level < 18; ++level) {
        double acc = 0.0;
        for (std::size_t i = 0; i < intervals; ++i)
            acc += g(h * (static_cast<double>(i) + 0.5));
        sum += acc;
        intervals *= 2;
        h *= 0.5;
        double cur = sum * h;
        if (std::abs(cur - prev) <= 0.5 * abs_tol) return cur;
        prev = cur;
    }
    throw numerical_error("average_over_exponential_trapezoid: did not reach tolerance");
}

}  // namespace risopt
