#include "stokes/io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace stokes {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

double parse_number(const std::string& text, const std::string& where) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &pos);
    } catch (const std::exception&) {
        throw ConfigError("not a number for " + where + ": '" + text + "'");
    }
    if (trim(text.substr(pos)) != "")
        throw ConfigError("trailing characters after number for " + where);
    return v;
}

/// Doubles formatted with 17 significant digits round-trip exactly.
std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string());
    return out;
}

}  // namespace

Config Config::parse_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_string(buf.str());
}

Config Config::parse_string(const std::string& text) {
    Config config;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("malformed section header at line " +
                                  std::to_string(lineno));
            section = trim(line.substr(1, line.size() - 2));
            if (section.empty())
                throw ConfigError("empty section name at line " +
                                  std::to_string(lineno));
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("expected 'key = value' at line " +
                              std::to_string(lineno));
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError("empty key or value at line " +
                              std::to_string(lineno));
        if (section.empty())
            throw ConfigError("key outside any section at line " +
                              std::to_string(lineno));
        const std::string full = section + "." + key;
        if (config.values_.count(full))
            throw ConfigError("duplicate key " + full);
        config.values_[full] = value;
    }
    return config;
}

bool Config::has(const std::string& section, const std::string& key) const {
    return values_.count(section + "." + key) != 0;
}

const std::string& Config::raw(const std::string& section,
                               const std::string& key) const {
    const auto it = values_.find(section + "." + key);
    if (it == values_.end())
        throw ConfigError("missing config key " + section + "." + key);
    return it->second;
}

std::string Config::str(const std::string& section,
                        const std::string& key) const {
    const std::string& v = raw(section, key);
    if (v.size() >= 2 && v.front() == '"' && v.back() == '"')
        return v.substr(1, v.size() - 2);
    return v;
}

std::string Config::str(const std::string& section, const std::string& key,
                        const std::string& fallback) const {
    return has(section, key) ? str(section, key) : fallback;
}

double Config::number(const std::string& section,
                      const std::string& key) const {
    return parse_number(raw(section, key), section + "." + key);
}

double Config::number(const std::string& section, const std::string& key,
                      double fallback) const {
    return has(section, key) ? number(section, key) : fallback;
}

int Config::integer(const std::string& section, const std::string& key,
                    int fallback) const {
    if (!has(section, key)) return fallback;
    const double v = number(section, key);
    if (v != std::floor(v))
        throw ConfigError("expected an integer for " + section + "." + key);
    return static_cast<int>(v);
}

bool Config::boolean(const std::string& section, const std::string& key,
                     bool fallback) const {
    if (!has(section, key)) return fallback;
    const std::string& v = raw(section, key);
    if (v == "true") return true;
    if (v == "false") return false;
    throw ConfigError("expected true/false for " + section + "." + key);
}

std::vector<double> Config::array(const std::string& section,
                                  const std::string& key) const {
    if (!has(section, key)) return {};
    const std::string& v = raw(section, key);
    if (v.size() < 2 || v.front() != '[' || v.back() != ']')
        throw ConfigError("expected [a, b, ...] for " + section + "." + key);
    std::vector<double> out;
    std::string body = v.substr(1, v.size() - 2);
    std::size_t start = 0;
    while (start <= body.size()) {
        const std::size_t comma = body.find(',', start);
        const std::string item =
            trim(body.substr(start, comma == std::string::npos
                                        ? std::string::npos
                                        : comma - start));
        if (!item.empty())
            out.push_back(parse_number(item, section + "." + key));
        else if (comma != std::string::npos)
            throw ConfigError("empty array element in " + section + "." + key);
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

FluidParams load_fluid_params(const Config& config) {
    const double mu_plus = config.number("fluids", "mu_plus");
    const double mu_minus = config.number("fluids", "mu_minus");
    const double sigma = config.number("fluids", "sigma");
    try {
        FluidParams params{};
        if (config.has("fluids", "theta")) {
            if (config.has("fluids", "rho_plus") || config.has("fluids", "g"))
                throw ConfigError(
                    "fluids.theta excludes fluids.rho_plus/rho_minus/g");
            params = FluidParams::from_theta(mu_plus, mu_minus, sigma,
                                             config.number("fluids", "theta"));
        } else {
            params.mu_plus = mu_plus;
            params.mu_minus = mu_minus;
            params.sigma = sigma;
            params.rho_plus = config.number("fluids", "rho_plus");
            params.rho_minus = config.number("fluids", "rho_minus");
            params.g = config.number("fluids", "g");
        }
        params.validate();
        return params;
    } catch (const std::invalid_argument& err) {
        throw ConfigError(err.what());
    }
}

InterfaceProfile load_initial_profile(const Config& config) {
    const int n = config.integer("grid", "n", 0);
    if (n <= 0) throw ConfigError("missing or invalid grid.n");
    const std::vector<double> cos_amps = config.array("initial", "cos");
    const std::vector<double> sin_amps = config.array("initial", "sin");
    const double mean = config.number("initial", "mean", 0.0);
    if (static_cast<int>(std::max(cos_amps.size(), sin_amps.size())) >= n / 2)
        throw ConfigError("initial coefficient list must be shorter than n/2");
    try {
        return InterfaceProfile::from_modes(n, cos_amps, sin_amps, mean);
    } catch (const std::invalid_argument& err) {
        throw ConfigError(err.what());
    }
}

TimeStepperConfig load_stepper_config(const Config& config) {
    TimeStepperConfig sc;
    const std::string scheme = config.str("stepper", "scheme", "imex2");
    if (scheme == "imex1")
        sc.scheme = Scheme::imex1;
    else if (scheme == "imex2")
        sc.scheme = Scheme::imex2;
    else if (scheme == "rk4")
        sc.scheme = Scheme::rk4;
    else
        throw ConfigError("unknown stepper.scheme '" + scheme + "'");
    sc.dt = config.number("stepper", "dt", 0.0);
    sc.t_end = config.number("stepper", "t_end", 1.0);
    sc.stride = config.integer("stepper", "stride", 1);
    sc.dealias = config.boolean("stepper", "dealias", false);
    sc.cap_abs = config.number("stepper", "cap_abs", 50.0);
    sc.cap_slope = config.number("stepper", "cap_slope", 20.0);
    try {
        sc.validate();
    } catch (const std::invalid_argument& err) {
        throw ConfigError(err.what());
    }
    return sc;
}

void write_timeseries(const std::filesystem::path& path,
                      const Trajectory& trajectory, const FluidParams& params,
                      int mode_count) {
    std::ofstream out = open_out(path);
    out << "t,mean,amp_max,slope_max,c1,c3";
    for (int k = 1; k <= mode_count; ++k) out << ",a" << k;
    out << "\n";
    for (const EvolutionState& state : trajectory.states) {
        const Diagnostics d = diagnostics(state.profile, params, mode_count);
        out << fmt(state.t) << ',' << fmt(d.mean) << ',' << fmt(d.amp_max)
            << ',' << fmt(d.slope_max) << ',' << fmt(d.c1) << ','
            << fmt(d.c3);
        for (double a : d.amplitudes) out << ',' << fmt(a);
        out << "\n";
    }
}

void write_snapshot(const std::filesystem::path& path,
                    const InterfaceProfile& profile) {
    std::ofstream out = open_out(path);
    out << "xi,f\n";
    const int n = profile.n();
    for (int j = 0; j < n; ++j)
        out << fmt(InterfaceProfile::grid_point(j, n)) << ','
            << fmt(profile.samples()[j]) << "\n";
}

InterfaceProfile read_snapshot(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open snapshot " + path.string());
    std::string line;
    if (!std::getline(in, line) || trim(line) != "xi,f")
        throw ConfigError("snapshot missing 'xi,f' header: " + path.string());
    std::vector<double> samples;
    while (std::getline(in, line)) {
        line = trim(line);
        if (line.empty()) continue;
        const std::size_t comma = line.find(',');
        if (comma == std::string::npos)
            throw ConfigError("malformed snapshot row: " + line);
        samples.push_back(parse_number(line.substr(comma + 1), "snapshot f"));
    }
    try {
        return InterfaceProfile::from_samples(samples);
    } catch (const std::invalid_argument& err) {
        throw ConfigError(err.what());
    }
}

void write_spectrum(const std::filesystem::path& path,
                    const SpectrumReport& report) {
    std::ofstream out = open_out(path);
    out << "k,lambda_analytic,lambda_numeric_re,lambda_numeric_im\n";
    for (std::size_t i = 0; i < report.analytic.size(); ++i) {
        const double target = report.analytic[i];
        Complex best(std::nan(""), std::nan(""));
        double dist = std::numeric_limits<double>::infinity();
        for (const Complex& ev : report.numeric) {
            const double d = std::abs(ev - Complex(target, 0.0));
            if (d < dist) {
                dist = d;
                best = ev;
            }
        }
        out << i + 1 << ',' << fmt(target) << ',' << fmt(best.real()) << ','
            << fmt(best.imag()) << "\n";
    }
}

void write_branch(const std::filesystem::path& path,
                  const std::vector<BranchPoint>& branch,
                  const std::vector<double>& eig_lead) {
    std::ofstream out = open_out(path);
    out << "ell,s,lambda,amplitude,slope_max,eig_lead_re\n";
    for (std::size_t i = 0; i < branch.size(); ++i) {
        const BranchPoint& pt = branch[i];
        const double eig =
            i < eig_lead.size() ? eig_lead[i] : std::nan("");
        out << pt.ell << ',' << fmt(pt.s) << ',' << fmt(pt.lambda) << ','
            << fmt(pt.profile.max_abs()) << ','
            << fmt(pt.profile.max_slope()) << ',' << fmt(eig) << "\n";
    }
}

void write_fields(const std::filesystem::path& path,
                  const std::vector<FieldRow>& rows) {
    std::ofstream out = open_out(path);
    out << "x1,x2,v1,v2,q,side\n";
    for (const FieldRow& r : rows)
        out << fmt(r.x1) << ',' << fmt(r.x2) << ',' << fmt(r.v1) << ','
            << fmt(r.v2) << ',' << fmt(r.q) << ',' << r.side << "\n";
}

void write_metadata(const std::filesystem::path& path, const Config& config,
                    const std::string& command,
                    const std::map<std::string, double>& extras) {
    nlohmann::json meta;
    meta["tool"] = "stokes-sheet";
    meta["command"] = command;
    nlohmann::json echo = nlohmann::json::object();
    for (const auto& [key, value] : config.entries()) echo[key] = value;
    meta["config"] = echo;
    for (const auto& [key, value] : extras) meta[key] = value;
    std::ofstream out = open_out(path);
    out << meta.dump(2) << "\n";
}

}  // namespace stokes
