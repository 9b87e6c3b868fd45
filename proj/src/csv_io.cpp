#include "fluxpulse/csv_io.hpp"

#include "fluxpulse/errors.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <sstream>
#include <string_view>

namespace fluxpulse {

std::string format_double(double v) {
    std::array<char, 32> buf;
    const auto [p, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), p);
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw ConfigError("cannot open '" + path + "' for writing");
    out << content;
    if (!out)
        throw ConfigError("write failed for '" + path + "'");
}

std::string render_timeseries_csv(const std::vector<ObservableSample>& samples) {
    std::ostringstream out;
    out << "tau,p_left,norm,energy\n";
    for (const auto& s : samples)
        out << format_double(s.tau) << ',' << format_double(s.p_left) << ','
            << format_double(s.norm) << ',' << format_double(s.energy) << '\n';
    return out.str();
}

std::string render_sweep_csv(const SweepResult& sweep) {
    std::ostringstream out;
    out << "amplitude,tau0,p_left,energy,fidelity\n";
    for (std::size_t i = 0; i < sweep.a_values.size(); ++i)
        for (std::size_t j = 0; j < sweep.tau0_values.size(); ++j) {
            const std::size_t k = sweep.index(i, j);
            out << format_double(sweep.a_values[i]) << ','
                << format_double(sweep.tau0_values[j]) << ','
                << format_double(sweep.p_left[k]) << ',' << format_double(sweep.energy[k])
                << ',' << format_double(sweep.fidelity[k]) << '\n';
        }
    return out.str();
}

std::string render_sweep_matrix_csv(const SweepResult& sweep) {
    std::ostringstream out;
    for (const double tau0 : sweep.tau0_values)
        out << ',' << format_double(tau0);
    out << '\n';
    for (std::size_t i = 0; i < sweep.a_values.size(); ++i) {
        out << format_double(sweep.a_values[i]);
        for (std::size_t j = 0; j < sweep.tau0_values.size(); ++j)
            out << ',' << format_double(sweep.p_left[sweep.index(i, j)]);
        out << '\n';
    }
    return out.str();
}

std::string render_twopulse_csv(const TwoPulseResult& result) {
    std::ostringstream out;
    out << "delta_tau,p_left_prime\n";
    for (std::size_t i = 0; i < result.delta_tau_values.size(); ++i)
        out << format_double(result.delta_tau_values[i]) << ','
            << format_double(result.p_left_prime[i]) << '\n';
    return out.str();
}

std::string render_profiles_csv(const std::vector<DensityProfile>& profiles) {
    std::ostringstream out;
    out << "tau,x,density\n";
    for (const auto& p : profiles)
        for (std::size_t j = 0; j < p.density.size(); ++j)
            out << format_double(p.tau) << ',' << format_double(p.grid.x(static_cast<int>(j)))
                << ',' << format_double(p.density[j]) << '\n';
    return out.str();
}

std::string render_fit_csv(const EnvelopeFit& fit) {
    std::ostringstream out;
    out << "a1,a2,t_d,rms_residual,n_extrema_used\n";
    out << format_double(fit.a1) << ',' << format_double(fit.a2) << ','
        << format_double(fit.t_d) << ',' << format_double(fit.rms_residual) << ','
        << fit.n_extrema_used << '\n';
    return out.str();
}

OscillationSeries read_series_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ConfigError("cannot open data file '" + path + "'");
    OscillationSeries series;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view v(line);
        while (!v.empty() && (v.back() == '\r' || v.back() == '\n'))
            v.remove_suffix(1);
        if (v.empty())
            continue;
        const std::size_t comma = v.find(',');
        if (comma == std::string_view::npos)
            throw ConfigError(path + ":" + std::to_string(line_no) + ": expected 't,y'");
        double t = 0.0, y = 0.0;
        const std::string_view ts = v.substr(0, comma), ys = v.substr(comma + 1);
        const auto rt = std::from_chars(ts.data(), ts.data() + ts.size(), t);
        const auto ry = std::from_chars(ys.data(), ys.data() + ys.size(), y);
        const bool ok = rt.ec == std::errc{} && rt.ptr == ts.data() + ts.size() &&
                        ry.ec == std::errc{} && ry.ptr == ys.data() + ys.size();
        if (!ok) {
            if (line_no == 1)
                continue; // header row
            throw ConfigError(path + ":" + std::to_string(line_no) + ": cannot parse '" +
                              std::string(v) + "'");
        }
        series.t.push_back(t);
        series.y.push_back(y);
    }
    try {
        series.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(path + ": " + e.what());
    }
    return series;
}

} // namespace fluxpulse
