#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace vpp::io {

enum class SynthProfile { spring, autumn };

SynthProfile synth_profile_from_string(const std::string& s);
const char* to_string(SynthProfile p);

// Hourly aligned exogenous data: weather plus the day-ahead spot price.
struct Scenario {
    std::int64_t start_time = 0;  // unix, first sample
    double lat_deg = 59.91;
    double lon_deg = 10.75;
    std::vector<double> t0_c;
    std::vector<double> ghi_wm2;
    std::vector<double> wind_ms;
    std::vector<double> price_eur_kwh;
    std::vector<std::string> warnings;  // non-fatal load diagnostics

    std::size_t size() const { return t0_c.size(); }
    std::int64_t time_at(std::size_t i) const {
        return start_time + static_cast<std::int64_t>(i) * 3600;
    }
    void validate() const;
};

// Weather CSV schema: timestamp,t2m_c,ghi_wm2,wind_ms
// Price CSV schema:   timestamp,price_eur_kwh
// Timestamps are hourly ISO-8601 UTC; the two files are aligned on the
// overlap of their spans. Gaps and duplicates are errors; small negative
// irradiance readings clamp to zero with a warning.
Scenario load_scenario(const std::string& weather_path,
                       const std::string& price_path);

void write_scenario(const Scenario& s, const std::string& weather_path,
                    const std::string& price_path);

// Deterministic synthetic scenario: sinusoidal daily temperature with an
// autoregressive anomaly, clear-sky irradiance shaped by a stochastic
// clearness index, AR(1) wind, and a double-peak daily price pattern.
// Values are quantized to 9 significant digits so a CSV round trip is exact.
Scenario synth_scenario(std::uint64_t seed, int days, SynthProfile profile);

// Quantize to `digits` significant decimal digits (matches the CSV writer).
double round_sig(double x, int digits);

}  // namespace vpp::io
