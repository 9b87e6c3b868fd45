#include "fluxpulse/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace fluxpulse {

void PhysicalParams::validate() const {
    if (!(std::isfinite(e_c) && std::isfinite(e_l) && std::isfinite(e_0)))
        throw std::invalid_argument("PhysicalParams: non-finite energy");
    if (!(e_c > 0.0))
        throw std::invalid_argument("PhysicalParams: e_c must be > 0");
    if (e_l < 0.0 || e_0 < 0.0)
        throw std::invalid_argument("PhysicalParams: e_l and e_0 must be >= 0");
}

void PulseSpec::validate() const {
    if (!(std::isfinite(amplitude) && std::isfinite(duration) && std::isfinite(center)))
        throw std::invalid_argument("PulseSpec: non-finite field");
    if (!(duration > 0.0))
        throw std::invalid_argument("PulseSpec: duration must be > 0");
    if (amplitude < 0.0 || amplitude > 1.0)
        throw std::invalid_argument(
            "PulseSpec: amplitude must be in [0, 1] (E_J would go negative at peak)");
    if (center < 3.5 * duration)
        throw std::invalid_argument("PulseSpec: center must be >= 3.5 * duration");
}

PulseSchedule::PulseSchedule(std::vector<PulseSpec> pulses, double total_time, double e_0)
    : pulses_(std::move(pulses)), total_time_(total_time), e_0_(e_0) {
    if (!(std::isfinite(total_time_) && total_time_ > 0.0))
        throw std::invalid_argument("PulseSchedule: total_time must be > 0");
    if (!(std::isfinite(e_0_)) || e_0_ < 0.0)
        throw std::invalid_argument("PulseSchedule: e_0 must be >= 0");
    for (const auto& p : pulses_)
        p.validate();
    std::sort(pulses_.begin(), pulses_.end(),
              [](const PulseSpec& a, const PulseSpec& b) { return a.center < b.center; });

    if (pulses_.empty())
        return;
    // E_J > 0 everywhere: dense sampling at 1/50 of the narrowest pulse,
    // plus the exact centers (where a lone pulse dips deepest).
    double min_dur = pulses_.front().duration;
    for (const auto& p : pulses_)
        min_dur = std::min(min_dur, p.duration);
    const double step = min_dur / 50.0;
    const auto check = [this](double tau) {
        if (dip_factor(tau) >= 1.0)
            throw std::invalid_argument(
                "PulseSchedule: E_J(tau) reaches zero at tau = " + std::to_string(tau));
    };
    for (double tau = 0.0; tau < total_time_; tau += step)
        check(tau);
    check(total_time_);
    for (const auto& p : pulses_)
        if (p.center >= 0.0 && p.center <= total_time_)
            check(p.center);
}

PulseSchedule PulseSchedule::single(const PulseSpec& pulse, double e_0) {
    return PulseSchedule({pulse}, pulse.center + 4.0 * pulse.duration, e_0);
}

PulseSchedule PulseSchedule::free_run(double total_time, double e_0) {
    return PulseSchedule({}, total_time, e_0);
}

double PulseSchedule::dip_factor(double tau) const {
    double s = 0.0;
    for (const auto& p : pulses_) {
        const double u = (tau - p.center) / p.duration;
        s += p.amplitude * std::exp(-u * u);
    }
    return s;
}

double ej_at(const PulseSchedule& schedule, double tau) {
    return schedule.e_0() * (1.0 - schedule.dip_factor(tau));
}

double potential_at(double x, double ej, const PhysicalParams& params) {
    return params.e_l * x * x + ej * std::cos(2.0 * pi * x) - params.e_0;
}

double a_critical(const PhysicalParams& params) {
    if (!(params.e_0 > 0.0))
        throw std::invalid_argument("a_critical: requires e_0 > 0");
    return 1.0 - params.e_l / (2.0 * pi * pi * params.e_0);
}

double tau_to_picoseconds(double tau) {
    return tau * picoseconds_per_tau;
}

} // namespace fluxpulse
