#include "risopt/rectifier.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

#include "risopt/errors.hpp"

namespace risopt {

RectifierModel make_rectifier_model(double c, double d, double p_sat) {
    if (!(c > 0.0) || !(d > 0.0) || !(p_sat > 0.0))
        throw config_error("rectifier model parameters must be positive");
    RectifierModel m;
    m.c = c;
    m.d = d;
    m.p_sat = p_sat;
    m.omega = 1.0 / (1.0 + std::exp(c * d));
    return m;
}

double psi(const RectifierModel& m, double p_rf) {
    if (p_rf < 0.0) throw config_error("psi: negative RF power");
    // Same expression at p_rf == 0 as the cached omega, so psi(0) == 0 exactly.
    const double s = 1.0 / (1.0 + std::exp(-m.c * (p_rf - m.d)));
    return m.p_sat * (s - m.omega) / (1.0 - m.omega);
}

double psi_bar_dt(const RectifierModel& m, double p_avg) {
    if (p_avg < 0.0) throw config_error("psi_bar_dt: negative average power");
    return average_over_exponential([&m](double x) { return psi(m, x); }, p_avg,
                                    gauss_laguerre_96());
}

double psi_stage(const RectifierModel& m, RectifierStage stage, double p) {
    return stage == RectifierStage::deterministic ? psi(m, p) : psi_bar_dt(m, p);
}

double psi_inverse(const RectifierModel& m, RectifierStage stage, double p_dc) {
    if (p_dc <= 0.0) return 0.0;
    if (p_dc >= m.p_sat)
        throw unreachable_demand("psi_inverse: demand at or above rectifier saturation");
    const double bracket_cap = 1e3 * m.d;
    double hi = m.d;
    while (psi_stage(m, stage, hi) < p_dc) {
        hi *= 2.0;
        if (hi > bracket_cap)
            throw unreachable_demand("psi_inverse: demand not reachable below bracket cap");
    }
    double lo = 0.0;
    while (hi - lo > 1e-10 * hi) {
        const double mid = 0.5 * (lo + hi);
        if (psi_stage(m, stage, mid) < p_dc)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

void verify_dt_quadrature(const RectifierModel& m) {
    // Representative operating point: mean at the logistic midpoint, where the
    // integrand exercises both the convex and the saturating part.
    const double gl = psi_bar_dt(m, m.d);
    const double ref = average_over_exponential_trapezoid(
        [&m](double x) { return psi(m, x); }, m.d, 1e-9 * m.p_sat);
    if (std::abs(gl - ref) > 1e-8 * m.p_sat)
        throw numerical_error("rectifier averaging self-check failed: quadrature disagrees "
                              "with trapezoid reference");
}

namespace {

double unit_scale(const std::string& column, const std::string& expected_prefix) {
    if (column.rfind(expected_prefix, 0) != 0)
        throw config_error("measurement header: expected column starting with '" +
                           expected_prefix + "', got '" + column + "'");
    const std::string suffix = column.substr(expected_prefix.size());
    if (suffix == "_w") return 1.0;
    if (suffix == "_mw") return 1e-3;
    if (suffix == "_uw") return 1e-6;
    if (suffix == "_nw") return 1e-9;
    throw config_error("measurement header: unknown unit suffix on '" + column + "'");
}

std::vector<std::string> split_fields(const std::string& line) {
    std::string s = line;
    for (char& ch : s)
        if (ch == ',' || ch == ';' || ch == '\t') ch = ' ';
    std::istringstream in(s);
    std::vector<std::string> out;
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

}  // namespace

MeasurementSet load_measurements(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open measurement file: " + path);
    std::string line;
    std::vector<std::string> header;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        header = split_fields(line);
        break;
    }
    if (header.size() != 2)
        throw config_error("measurement file needs a two-column header: " + path);
    const double rf_scale = unit_scale(header[0], "rf_input");
    const double dc_scale = unit_scale(header[1], "dc_output");

    MeasurementSet set;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        const auto fields = split_fields(line);
        if (fields.empty()) continue;
        if (fields.size() != 2)
            throw config_error("measurement file: expected two values per row at line " +
                               std::to_string(line_no));
        double rf = 0.0, dc = 0.0;
        try {
            rf = std::stod(fields[0]);
            dc = std::stod(fields[1]);
        } catch (const std::exception&) {
            throw config_error("measurement file: non-numeric value at line " +
                               std::to_string(line_no));
        }
        if (rf < 0.0 || dc < 0.0)
            throw config_error("measurement file: negative power at line " +
                               std::to_string(line_no));
        set.p_rf_w.push_back(rf * rf_scale);
        set.p_dc_w.push_back(dc * dc_scale);
    }
    if (set.p_rf_w.size() < 4)
        throw config_error("measurement file: need at least 4 points to fit");
    return set;
}

namespace {

double sum_squared_residuals(const MeasurementSet& data, const RectifierModel& m) {
    double acc = 0.0;
    for (std::size_t i = 0; i < data.p_rf_w.size(); ++i) {
        const double r = psi(m, data.p_rf_w[i]) - data.p_dc_w[i];
        acc += r * r;
    }
    return acc;
}

// Nelder-Mead on log-parameters (ln c, ln d, ln p_sat): keeps the parameters
// positive and makes the step sizes scale-free.
struct Simplex3 {
    using Point = std::array<double, 3>;
    std::function<double(const Point&)> f;

    Point run(const Point& start, int max_iter) const {
        constexpr double alpha = 1.0, gamma = 2.0, rho_c = 0.5, sigma = 0.5;
        std::array<Point, 4> x;
        std::array<double, 4> fx;
        x[0] = start;
        for (int i = 1; i < 4; ++i) {
            x[i] = start;
            x[i][i - 1] += 0.25;
        }
        for (int i = 0; i < 4; ++i) fx[i] = f(x[i]);

        for (int iter = 0; iter < max_iter; ++iter) {
            std::array<int, 4> ord{0, 1, 2, 3};
            std::sort(ord.begin(), ord.end(), [&](int a, int b) { return fx[a] < fx[b]; });
            std::array<Point, 4> xs;
            std::array<double, 4> fs;
            for (int i = 0; i < 4; ++i) {
                xs[i] = x[ord[i]];
                fs[i] = fx[ord[i]];
            }
            x = xs;
            fx = fs;
            if (std::abs(fx[3] - fx[0]) <= 1e-16 * (std::abs(fx[0]) + 1e-300)) break;

            Point centroid{0, 0, 0};
            for (int i = 0; i < 3; ++i)
                for (int k = 0; k < 3; ++k) centroid[k] += x[i][k] / 3.0;

            auto blend = [&](double t) {
                Point p;
                for (int k = 0; k < 3; ++k) p[k] = centroid[k] + t * (x[3][k] - centroid[k]);
                return p;
            };
            const Point xr = blend(-alpha);
            const double fr = f(xr);
            if (fr < fx[0]) {
                const Point xe = blend(-gamma);
                const double fe = f(xe);
                if (fe < fr) {
                    x[3] = xe;
                    fx[3] = fe;
                } else {
                    x[3] = xr;
                    fx[3] = fr;
                }
            } else if (fr < fx[2]) {
                x[3] = xr;
                fx[3] = fr;
            } else {
                const Point xc = blend(fr < fx[3] ? -rho_c : rho_c);
                const double fc = f(xc);
                if (fc < std::min(fr, fx[3])) {
                    x[3] = xc;
                    fx[3] = fc;
                } else {
                    for (int i = 1; i < 4; ++i) {
                        for (int k = 0; k < 3; ++k)
                            x[i][k] = x[0][k] + sigma * (x[i][k] - x[0][k]);
                        fx[i] = f(x[i]);
                    }
                }
            }
        }
        int best = 0;
        for (int i = 1; i < 4; ++i)
            if (fx[i] < fx[best]) best = i;
        return x[best];
    }
};

}  // namespace

RectifierFit fit_rectifier(const MeasurementSet& data) {
    const double y_max = *std::max_element(data.p_dc_w.begin(), data.p_dc_w.end());
    if (!(y_max > 0.0)) throw config_error("fit_rectifier: all DC outputs are zero");
    std::vector<double> xs = data.p_rf_w;
    std::sort(xs.begin(), xs.end());
    const double x_med = std::max(xs[xs.size() / 2], 1e-12);

    Simplex3 nm;
    nm.f = [&](const Simplex3::Point& p) {
        const double c = std::exp(p[0]);
        const double d = std::exp(p[1]);
        const double ps = std::exp(p[2]);
        if (!(std::isfinite(c) && std::isfinite(d) && std::isfinite(ps))) return 1e300;
        RectifierModel m;
        m.c = c;
        m.d = d;
        m.p_sat = ps;
        m.omega = 1.0 / (1.0 + std::exp(c * d));
        if (m.omega >= 1.0) return 1e300;
        return sum_squared_residuals(data, m);
    };

    Simplex3::Point best{};
    double best_f = 1e301;
    for (double ps0 : {1.02 * y_max, 1.3 * y_max, 2.0 * y_max}) {
        for (double d0 : {0.3 * x_med, x_med, 3.0 * x_med}) {
            for (double cd0 : {1.0, 3.0, 8.0}) {  // initial c*d products
                Simplex3::Point start{std::log(cd0 / d0), std::log(d0), std::log(ps0)};
                const Simplex3::Point res = nm.run(start, 600);
                const double fres = nm.f(res);
                if (fres < best_f) {
                    best_f = fres;
                    best = res;
                }
            }
        }
    }
    // Polish the winner with a longer run from its own location.
    const Simplex3::Point polished = nm.run(best, 4000);
    if (nm.f(polished) < best_f) {
        best = polished;
        best_f = nm.f(polished);
    }

    RectifierFit fit;
    fit.model = make_rectifier_model(std::exp(best[0]), std::exp(best[1]), std::exp(best[2]));
    fit.rms_residual_w = std::sqrt(best_f / static_cast<double>(data.p_rf_w.size()));
    verify_dt_quadrature(fit.model);
    return fit;
}

}  // namespace risopt
