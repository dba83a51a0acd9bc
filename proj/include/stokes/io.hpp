#ifndef STOKES_IO_HPP
#define STOKES_IO_HPP

#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "stokes/equilibria.hpp"
#include "stokes/evolution.hpp"
#include "stokes/params.hpp"
#include "stokes/profile.hpp"

namespace stokes {

/// Raised on malformed configuration files or physically invalid settings.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Sectioned key-value run configuration (a TOML-compatible subset:
/// `[section]` headers, `key = value` lines, `#` comments; values are
/// numbers, booleans, double-quoted strings, or arrays of numbers).
class Config {
public:
    static Config parse_file(const std::filesystem::path& path);
    static Config parse_string(const std::string& text);

    bool has(const std::string& section, const std::string& key) const;
    std::string str(const std::string& section, const std::string& key) const;
    std::string str(const std::string& section, const std::string& key,
                    const std::string& fallback) const;
    double number(const std::string& section, const std::string& key) const;
    double number(const std::string& section, const std::string& key,
                  double fallback) const;
    int integer(const std::string& section, const std::string& key,
                int fallback) const;
    bool boolean(const std::string& section, const std::string& key,
                 bool fallback) const;
    std::vector<double> array(const std::string& section,
                              const std::string& key) const;

    /// All entries as "section.key" -> raw value text (for metadata echo).
    const std::map<std::string, std::string>& entries() const {
        return values_;
    }

private:
    const std::string& raw(const std::string& section,
                           const std::string& key) const;
    std::map<std::string, std::string> values_;
};

/// [fluids] block: mu_plus, mu_minus, sigma, and either theta or
/// rho_plus/rho_minus/g.
FluidParams load_fluid_params(const Config& config);

/// [grid] n plus [initial] cos/sin amplitude lists and mean.
InterfaceProfile load_initial_profile(const Config& config);

/// [stepper] block: scheme, dt, t_end, stride, dealias, cap_abs, cap_slope.
TimeStepperConfig load_stepper_config(const Config& config);

/// Time-series table `t,mean,amp_max,slope_max,c1,c3,a1,...,aK`.
void write_timeseries(const std::filesystem::path& path,
                      const Trajectory& trajectory, const FluidParams& params,
                      int mode_count);

/// Profile snapshot `xi,f`, and its inverse.
void write_snapshot(const std::filesystem::path& path,
                    const InterfaceProfile& profile);
InterfaceProfile read_snapshot(const std::filesystem::path& path);

/// Spectrum table `k,lambda_analytic,lambda_numeric_re,lambda_numeric_im`;
/// each analytic rate is paired with the nearest numeric eigenvalue.
void write_spectrum(const std::filesystem::path& path,
                    const SpectrumReport& report);

/// Branch table `ell,s,lambda,amplitude,slope_max,eig_lead_re`; eig_lead
/// entries are NaN when stability was not requested.
void write_branch(const std::filesystem::path& path,
                  const std::vector<BranchPoint>& branch,
                  const std::vector<double>& eig_lead);

struct FieldRow {
    double x1 = 0.0, x2 = 0.0;
    double v1 = 0.0, v2 = 0.0, q = 0.0;
    int side = 0;
};

/// Bulk-field table `x1,x2,v1,v2,q,side`.
void write_fields(const std::filesystem::path& path,
                  const std::vector<FieldRow>& rows);

/// JSON sidecar echoing the command and the parsed configuration, plus
/// command-specific derived scalars (e.g. theta0 for the spectrum command).
void write_metadata(const std::filesystem::path& path, const Config& config,
                    const std::string& command,
                    const std::map<std::string, double>& extras = {});

}  // namespace stokes

#endif
