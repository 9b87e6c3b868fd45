#pragma once

#include <vector>

namespace fluxpulse {

inline constexpr double pi = 3.14159265358979323846;

// One unit of dimensionless time corresponds to hbar/(k_B * 1 K).
inline constexpr double picoseconds_per_tau = 7.64;

// SQUID energy scales, all in Kelvin. Defaults follow the device this model
// was written for. e_l and e_0 may be zero (harmonic / free-particle limits
// used by the solver tests); e_c must stay positive since it sets the
// effective mass pi^2 / (2 e_c).
struct PhysicalParams {
    double e_c = 0.009; // charging energy
    double e_l = 645.0; // inductive energy
    double e_0 = 76.0;  // unperturbed Josephson energy

    double kinetic_coeff() const { return e_c / (pi * pi); }
    double mass() const { return pi * pi / (2.0 * e_c); }

    // Throws std::invalid_argument on violation.
    void validate() const;
};

// Gaussian dip of the Josephson energy: depth A, width tau_0, center tau_c.
// center >= 3.5 * duration keeps E_J(0) within e^{-12} of E_0.
struct PulseSpec {
    double amplitude = 0.0;
    double duration = 1.0;
    double center = 4.0;

    void validate() const;
};

// E_J(tau) = e_0 * (1 - sum_i A_i exp[-(tau - tau_c,i)^2 / tau_0,i^2]).
// Pulses superpose additively and are kept sorted by center. Construction
// rejects schedules where E_J would touch zero anywhere on [0, total_time]
// (checked by dense sampling plus the pulse centers).
class PulseSchedule {
  public:
    PulseSchedule(std::vector<PulseSpec> pulses, double total_time, double e_0);

    static PulseSchedule single(const PulseSpec& pulse, double e_0);
    static PulseSchedule free_run(double total_time, double e_0);

    const std::vector<PulseSpec>& pulses() const { return pulses_; }
    double total_time() const { return total_time_; }
    double e_0() const { return e_0_; }

    // sum_i A_i exp[-(tau - tau_c,i)^2 / tau_0,i^2]
    double dip_factor(double tau) const;

  private:
    std::vector<PulseSpec> pulses_;
    double total_time_;
    double e_0_;
};

// E_J(tau) in Kelvin.
double ej_at(const PulseSchedule& schedule, double tau);

// V(x) = E_L x^2 + E_J cos(2 pi x) - E_0, in Kelvin.
double potential_at(double x, double ej, const PhysicalParams& params);

// Pulse amplitude above which the inter-well barrier vanishes at pulse peak:
// A_cr = 1 - E_L / (2 pi^2 E_0). Negative when there is no barrier at all.
double a_critical(const PhysicalParams& params);

double tau_to_picoseconds(double tau);

} // namespace fluxpulse
