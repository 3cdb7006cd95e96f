#include "linkvol/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

#include "linkvol/errors.hpp"

namespace linkvol {

namespace {

// 15-point Kronrod nodes on [-1,1] (positive half) with the embedded 7-point
// Gauss rule. Standard QUADPACK dqk15 constants.
constexpr double xgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.000000000000000};
constexpr double wgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
constexpr double wg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469};

struct PanelEval {
    double kronrod;
    double err;
};

PanelEval gk15(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    double resg = fc * wg[3];
    double resk = fc * wgk[7];
    for (int i = 0; i < 7; ++i) {
        const double x = h * xgk[i];
        const double fsum = f(c - x) + f(c + x);
        resk += wgk[i] * fsum;
        if (i % 2 == 1) resg += wg[i / 2] * fsum;
    }
    const double kron = resk * h;
    // Plain |Kronrod - Gauss| panel error: pessimistic for smooth integrands,
    // which only costs a few extra bisections.
    const double err = std::abs((resk - resg) * h);
    return {kron, err};
}

struct Panel {
    double a, b, value, err;
};

} // namespace

QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     const QuadratureConfig& cfg) {
    QuadResult out;
    if (a == b) {
        out.converged = true;
        return out;
    }
    std::vector<Panel> panels;
    PanelEval e0 = gk15(f, a, b);
    panels.push_back({a, b, e0.kronrod, e0.err});
    double total = e0.kronrod, toterr = e0.err;
    int splits = 0;
    while (splits < cfg.max_subdivisions) {
        const double goal = std::max(cfg.abs_tol, cfg.rel_tol * std::abs(total));
        if (toterr <= goal) break;
        // split the worst panel
        size_t worst = 0;
        for (size_t i = 1; i < panels.size(); ++i)
            if (panels[i].err > panels[worst].err) worst = i;
        Panel p = panels[worst];
        const double mid = 0.5 * (p.a + p.b);
        if (mid == p.a || mid == p.b) break; // interval at floating-point resolution
        PanelEval l = gk15(f, p.a, mid);
        PanelEval r = gk15(f, mid, p.b);
        total += l.kronrod + r.kronrod - p.value;
        toterr += l.err + r.err - p.err;
        panels[worst] = {p.a, mid, l.kronrod, l.err};
        panels.push_back({mid, p.b, r.kronrod, r.err});
        ++splits;
    }
    out.value = total;
    out.error_estimate = toterr;
    out.subdivisions = splits;
    out.converged = toterr <= std::max(cfg.abs_tol, cfg.rel_tol * std::abs(total));
    return out;
}

double integrate_or_throw(const std::function<double(double)>& f, double a,
                          double b, const QuadratureConfig& cfg) {
    QuadResult r = integrate(f, a, b, cfg);
    if (!r.converged)
        throw Error(ErrorCategory::tolerance,
                    "1-D quadrature did not converge (estimate " +
                        std::to_string(r.error_estimate) + ")");
    return r.value;
}

double integrate2d(const std::function<double(double, double)>& f, double ax,
                   double bx, double ay, double by,
                   const QuadratureConfig& cfg) {
    // Inner pass runs a little tighter than the outer so inner noise does not
    // masquerade as outer structure.
    QuadratureConfig inner = cfg;
    inner.abs_tol = cfg.abs_tol * 0.1;
    inner.rel_tol = cfg.rel_tol * 0.1;
    auto outer = [&](double x) {
        return integrate_or_throw([&](double y) { return f(x, y); }, ay, by, inner);
    };
    return integrate_or_throw(outer, ax, bx, cfg);
}

const GaussRule& gauss_legendre01(int n) {
    static std::mutex mu;
    static std::map<int, GaussRule> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    if (n < 1)
        throw Error(ErrorCategory::domain, "Gauss rule order must be >= 1");
    const double pi = std::acos(-1.0);
    GaussRule r;
    r.x.resize(n);
    r.w.resize(n);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double z = std::cos(pi * (i + 0.75) / (n + 0.5));
        double pp = 0;
        for (int iter = 0; iter < 100; ++iter) {
            double p1 = 1, p2 = 0;
            for (int j = 0; j < n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1);
            }
            pp = n * (z * p1 - p2) / (z * z - 1);
            const double dz = p1 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-15) break;
        }
        const double w = 2.0 / ((1 - z * z) * pp * pp);
        r.x[i] = 0.5 * (1 - z);
        r.x[n - 1 - i] = 0.5 * (1 + z);
        r.w[i] = 0.5 * w;
        r.w[n - 1 - i] = 0.5 * w;
    }
    return cache.emplace(n, std::move(r)).first->second;
}

Extrapolation richardson_1k(const std::vector<double>& kappas,
                            const std::vector<double>& values) {
    Extrapolation ext;
    const size_t n = values.size();
    if (n == 0 || kappas.size() != n) return ext;
    if (n == 1) {
        ext.value = values[0];
        ext.err_est = std::abs(values[0]);
        return ext;
    }
    const double k1 = kappas[n - 2], k2 = kappas[n - 1];
    const double v1 = values[n - 2], v2 = values[n - 1];
    ext.value = (k2 * v2 - k1 * v1) / (k2 - k1);
    ext.err_est = std::abs(ext.value - v2) + std::abs(v2 - v1);
    ext.valid = true;
    return ext;
}

} // namespace linkvol
