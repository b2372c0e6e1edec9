#include "phonon/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

#include "phonon/errors.hpp"

namespace phonon {

namespace {

// Gauss-Kronrod 7/15 nodes and weights on [-1, 1] (QUADPACK values).
constexpr double kronrod_nodes[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.000000000000000};
constexpr double kronrod_weights[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
constexpr double gauss_weights[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

struct Panel {
    double a, b;
    double value;
    double error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

Panel evaluate_panel(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double fv[15];
    for (int i = 0; i < 7; ++i) {
        fv[i] = f(c - h * kronrod_nodes[i]);
        fv[14 - i] = f(c + h * kronrod_nodes[i]);
    }
    fv[7] = f(c);
    double kronrod = kronrod_weights[7] * fv[7];
    for (int i = 0; i < 7; ++i) kronrod += kronrod_weights[i] * (fv[i] + fv[14 - i]);
    // Gauss-7 uses the odd Kronrod nodes (indices 1, 3, 5) plus the center.
    double gauss = gauss_weights[3] * fv[7];
    for (int i = 0; i < 3; ++i)
        gauss += gauss_weights[i] * (fv[2 * i + 1] + fv[13 - 2 * i]);
    Panel p;
    p.a = a;
    p.b = b;
    p.value = kronrod * h;
    const double diff = std::abs((kronrod - gauss) * h);
    // QUADPACK-style sharpened error estimate.
    p.error = diff;
    if (diff > 0.0) p.error = std::min(diff, std::pow(200.0 * diff, 1.5));
    return p;
}

} // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double a, double b, double rel_tol,
                                    double abs_tol, int max_subdivisions) {
    if (!(b > a)) throw InvalidArgument("integrate_adaptive: requires b > a");
    if (!(rel_tol > 0.0) && !(abs_tol > 0.0))
        throw InvalidArgument("integrate_adaptive: need a positive tolerance");

    std::priority_queue<Panel> queue;
    queue.push(evaluate_panel(f, a, b));
    double total = queue.top().value;
    double total_err = queue.top().error;

    int splits = 0;
    while (total_err > std::max(rel_tol * std::abs(total), abs_tol)) {
        if (splits >= max_subdivisions)
            throw QuadratureError("integrate_adaptive: subdivision budget exhausted",
                                  total, total_err);
        Panel worst = queue.top();
        queue.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b)
            throw QuadratureError("integrate_adaptive: interval too small to bisect",
                                  total, total_err);
        Panel left = evaluate_panel(f, worst.a, mid);
        Panel right = evaluate_panel(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        queue.push(left);
        queue.push(right);
        ++splits;
    }

    QuadratureResult r;
    r.value = total;
    r.error = total_err;
    r.subdivisions = splits;
    return r;
}

} // namespace phonon
