#include "fluxpulse/envelope_fit.hpp"

#include "fluxpulse/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace fluxpulse {

void OscillationSeries::validate() const {
    if (t.size() != y.size())
        throw std::invalid_argument("OscillationSeries: t and y lengths differ");
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (!std::isfinite(t[i]) || !std::isfinite(y[i]))
            throw std::invalid_argument("OscillationSeries: non-finite entry");
        if (i > 0 && !(t[i] > t[i - 1]))
            throw std::invalid_argument("OscillationSeries: t must be strictly increasing");
        if (y[i] < 0.0 || y[i] > 1.0)
            throw std::invalid_argument("OscillationSeries: y outside [0, 1]");
    }
}

std::vector<int> local_extrema_indices(const std::vector<double>& y, EnvelopeSide side) {
    std::vector<int> out;
    const int n = static_cast<int>(y.size());
    int i = 1;
    while (i < n - 1) {
        // consolidate a plateau of equal values into one candidate
        int j = i;
        while (j + 1 < n - 1 && y[j + 1] == y[i])
            ++j;
        const double prev = y[i - 1];
        const double next = y[j + 1];
        const bool is_max = y[i] > prev && y[i] > next;
        const bool is_min = y[i] < prev && y[i] < next;
        if ((side == EnvelopeSide::upper && is_max) || (side == EnvelopeSide::lower && is_min))
            out.push_back((i + j) / 2);
        i = j + 1;
    }
    return out;
}

OscillationSeries extract_envelope(const OscillationSeries& series, EnvelopeSide side) {
    series.validate();
    const std::vector<int> idx = local_extrema_indices(series.y, side);
    if (idx.size() < 3)
        throw FitError("extract_envelope: fewer than 3 interior extrema (" +
                       std::to_string(idx.size()) + "); fit would be underdetermined");
    OscillationSeries env;
    env.t.reserve(idx.size());
    env.y.reserve(idx.size());
    for (int k : idx) {
        env.t.push_back(series.t[static_cast<std::size_t>(k)]);
        env.y.push_back(series.y[static_cast<std::size_t>(k)]);
    }
    return env;
}

namespace {

// Best (a1, a2) for fixed t_d by the 2x2 normal equations; returns the sum of
// squared residuals (infinity for a numerically singular design).
double solve_linear(const std::vector<double>& t, const std::vector<double>& y, double t_d,
                    double& a1, double& a2) {
    const std::size_t m = t.size();
    double se = 0.0, see = 0.0, sy = 0.0, sey = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double e = std::exp(-t[i] / t_d);
        se += e;
        see += e * e;
        sy += y[i];
        sey += e * y[i];
    }
    const double n = static_cast<double>(m);
    const double det = n * see - se * se;
    if (!(std::abs(det) > 1e-14 * n * std::max(see, 1e-300)))
        return std::numeric_limits<double>::infinity();
    a1 = (see * sy - se * sey) / det;
    a2 = (n * sey - se * sy) / det;
    double sse = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double r = a1 + a2 * std::exp(-t[i] / t_d) - y[i];
        sse += r * r;
    }
    return sse;
}

} // namespace

EnvelopeFit fit_exponential(const OscillationSeries& envelope) {
    const auto& t = envelope.t;
    const auto& y = envelope.y;
    if (t.size() != y.size())
        throw FitError("fit_exponential: t and y lengths differ");
    if (t.size() < 3)
        throw FitError("fit_exponential: need at least 3 points");
    for (std::size_t i = 0; i < t.size(); ++i)
        if (!std::isfinite(t[i]) || !std::isfinite(y[i]))
            throw FitError("fit_exponential: non-finite input");
    const double span = t.back() - t.front();
    if (!(span > 0.0))
        throw FitError("fit_exponential: degenerate design, no t spread");

    // scan bracket: [smallest spacing, 100 * span], log-spaced
    double dt_min = span;
    for (std::size_t i = 1; i < t.size(); ++i)
        dt_min = std::min(dt_min, t[i] - t[i - 1]);
    const double lo = dt_min;
    const double hi = 100.0 * span;
    constexpr int n_candidates = 200;

    const double log_lo = std::log(lo), log_hi = std::log(hi);
    int best = -1;
    double best_sse = std::numeric_limits<double>::infinity();
    std::vector<double> cand(n_candidates);
    for (int i = 0; i < n_candidates; ++i) {
        cand[static_cast<std::size_t>(i)] =
            std::exp(log_lo + (log_hi - log_lo) * i / (n_candidates - 1));
        double a1, a2;
        const double sse = solve_linear(t, y, cand[static_cast<std::size_t>(i)], a1, a2);
        if (sse < best_sse) {
            best_sse = sse;
            best = i;
        }
    }
    if (best < 0)
        throw FitError("fit_exponential: all candidate scales degenerate");

    // golden-section refinement between the best candidate's neighbors
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = cand[static_cast<std::size_t>(std::max(0, best - 1))];
    double b = cand[static_cast<std::size_t>(std::min(n_candidates - 1, best + 1))];
    const auto sse_at = [&](double td) {
        double a1, a2;
        return solve_linear(t, y, td, a1, a2);
    };
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = sse_at(x1), f2 = sse_at(x2);
    for (int it = 0; it < 200 && (b - a) > 1e-13 * b; ++it) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - gr * (b - a);
            f1 = sse_at(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + gr * (b - a);
            f2 = sse_at(x2);
        }
    }

    EnvelopeFit fit;
    fit.t_d = 0.5 * (a + b);
    double sse = solve_linear(t, y, fit.t_d, fit.a1, fit.a2);
    if (best_sse < sse) { // scan candidate beat the refinement bracket
        fit.t_d = cand[static_cast<std::size_t>(best)];
        sse = solve_linear(t, y, fit.t_d, fit.a1, fit.a2);
    }
    fit.rms_residual = std::sqrt(sse / static_cast<double>(t.size()));
    fit.n_extrema_used = static_cast<int>(t.size());

    // Decay is unidentifiable when the exponential term explains nothing
    // beyond a constant: compare against the flat fit a1 = mean(y).
    double mean = 0.0;
    for (double v : y)
        mean += v;
    mean /= static_cast<double>(y.size());
    double sse_const = 0.0;
    for (double v : y)
        sse_const += (v - mean) * (v - mean);
    fit.t_d_identifiable = sse < sse_const * (1.0 - 1e-9);
    return fit;
}

OscillationSeries synth_decohered_signal(double omega, double t_d, double baseline,
                                         double amplitude, std::vector<double> t_values) {
    if (!(std::isfinite(omega) && omega >= 0.0))
        throw std::invalid_argument("synth_decohered_signal: omega must be >= 0");
    if (!(t_d > 0.0)) // +infinity allowed: no decay
        throw std::invalid_argument("synth_decohered_signal: t_d must be > 0");
    if (!(std::isfinite(baseline) && std::isfinite(amplitude)) || amplitude < 0.0)
        throw std::invalid_argument("synth_decohered_signal: bad baseline/amplitude");
    if (amplitude + baseline > 1.0 || baseline - amplitude < 0.0)
        throw std::invalid_argument(
            "synth_decohered_signal: baseline +/- amplitude must stay within [0, 1]");

    OscillationSeries s;
    s.t = std::move(t_values);
    s.y.resize(s.t.size());
    for (std::size_t i = 0; i < s.t.size(); ++i) {
        const double decay = std::isinf(t_d) ? 1.0 : std::exp(-s.t[i] / t_d);
        s.y[i] = baseline + amplitude * decay * std::cos(omega * s.t[i]);
    }
    s.validate();
    return s;
}

} // namespace fluxpulse
