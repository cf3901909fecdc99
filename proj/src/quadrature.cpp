#include "sensint/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>

#include "sensint/errors.hpp"

namespace sensint {

namespace {

constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851, 0.864864423359769072789712788640926,
    0.741531185599394439863864773280788, 0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204, 0.104790010322250183839876322541518,
    0.140653259715525918745189590510238, 0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                                       0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a;
    double b;
    double value;
    double error;
};

struct ByError {
    bool operator()(const Panel& x, const Panel& y) const {
        if (x.error != y.error) return x.error < y.error;
        return x.a > y.a;
    }
};

Panel make_panel(const std::function<double(double)>& f, double a, double b) {
    const QuadratureResult r = gauss_kronrod_15(f, a, b);
    Panel p{a, b, r.value, r.error};
    if (!std::isfinite(p.value) || !std::isfinite(p.error)) p.error = std::numeric_limits<double>::infinity();
    return p;
}

}  // namespace

QuadratureResult gauss_kronrod_15(const std::function<double(double)>& f, double a, double b) {
    const double centre = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(centre);
    double kronrod = fc * kWgk[7];
    double gauss = fc * kWg[3];
    double abs_sum = std::abs(kronrod);
    std::array<double, 7> f1{};
    std::array<double, 7> f2{};
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[static_cast<std::size_t>(j)];
        f1[static_cast<std::size_t>(j)] = f(centre - dx);
        f2[static_cast<std::size_t>(j)] = f(centre + dx);
        const double pair = f1[static_cast<std::size_t>(j)] + f2[static_cast<std::size_t>(j)];
        kronrod += kWgk[static_cast<std::size_t>(j)] * pair;
        abs_sum += kWgk[static_cast<std::size_t>(j)] *
                   (std::abs(f1[static_cast<std::size_t>(j)]) + std::abs(f2[static_cast<std::size_t>(j)]));
        if (j % 2 == 1) gauss += kWg[static_cast<std::size_t>(j / 2)] * pair;
    }
    const double mean = 0.5 * kronrod;
    double asc = kWgk[7] * std::abs(fc - mean);
    for (int j = 0; j < 7; ++j) {
        asc += kWgk[static_cast<std::size_t>(j)] *
               (std::abs(f1[static_cast<std::size_t>(j)] - mean) + std::abs(f2[static_cast<std::size_t>(j)] - mean));
    }
    QuadratureResult out;
    out.value = kronrod * half;
    asc *= std::abs(half);
    double err = std::abs((kronrod - gauss) * half);
    if (asc != 0.0 && err != 0.0) err = asc * std::min(1.0, std::pow(200.0 * err / asc, 1.5));
    const double resabs = abs_sum * std::abs(half);
    const double eps = std::numeric_limits<double>::epsilon();
    if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) err = std::max(50.0 * eps * resabs, err);
    out.error = err;
    out.panels = 1;
    return out;
}

QuadratureResult integrate_adaptive(const std::function<double(double)>& f, std::vector<double> breaks,
                                    double abs_tol, int max_panels) {
    if (breaks.size() < 2) fail(ErrorCode::InvalidArgument, "need at least two break points");
    if (!(abs_tol > 0.0)) fail(ErrorCode::InvalidArgument, "abs_tol must be positive");
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

    std::priority_queue<Panel, std::vector<Panel>, ByError> queue;
    double total_error = 0.0;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        Panel p = make_panel(f, breaks[i], breaks[i + 1]);
        total_error += p.error;
        queue.push(p);
    }

    int count = static_cast<int>(queue.size());
    // total_error is refreshed from scratch now and then to stop drift
    int since_refresh = 0;
    while (total_error > abs_tol && count < max_panels) {
        Panel worst = queue.top();
        const double mid = 0.5 * (worst.a + worst.b);
        const double width = worst.b - worst.a;
        if (!(mid > worst.a && mid < worst.b) || width <= 4.0 * std::numeric_limits<double>::epsilon() *
                                                              std::max(std::abs(worst.a), std::abs(worst.b))) {
            if (!std::isfinite(worst.error)) {
                std::ostringstream msg;
                msg << "integrand is not finite near " << mid;
                fail(ErrorCode::AxisZeroDetected, msg.str());
            }
            break;
        }
        queue.pop();
        const Panel left = make_panel(f, worst.a, mid);
        const Panel right = make_panel(f, mid, worst.b);
        if (std::isfinite(worst.error)) {
            total_error += left.error + right.error - worst.error;
        } else {
            total_error = std::numeric_limits<double>::infinity();
        }
        queue.push(left);
        queue.push(right);
        ++count;
        if (!std::isfinite(total_error) || ++since_refresh >= 256) {
            since_refresh = 0;
            std::vector<Panel> all;
            all.reserve(queue.size());
            total_error = 0.0;
            while (!queue.empty()) {
                total_error += queue.top().error;
                all.push_back(queue.top());
                queue.pop();
            }
            for (const Panel& p : all) queue.push(p);
        }
    }

    std::vector<Panel> panels;
    panels.reserve(queue.size());
    while (!queue.empty()) {
        panels.push_back(queue.top());
        queue.pop();
    }
    std::sort(panels.begin(), panels.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
    QuadratureResult out;
    for (const Panel& p : panels) {
        if (!std::isfinite(p.value)) {
            std::ostringstream msg;
            msg << "integrand is not finite on [" << p.a << ", " << p.b << "]";
            fail(ErrorCode::AxisZeroDetected, msg.str());
        }
        out.value += p.value;
        out.error += p.error;
    }
    out.panels = static_cast<int>(panels.size());
    return out;
}

}  // namespace sensint
