#include "vpp/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>

#include "vpp/clearsky.hpp"
#include "vpp/errors.hpp"
#include "vpp/time.hpp"

namespace vpp::io {

SynthProfile synth_profile_from_string(const std::string& s) {
    if (s == "spring") return SynthProfile::spring;
    if (s == "autumn") return SynthProfile::autumn;
    throw ValidationError("unknown profile '" + s + "' (expected spring|autumn)");
}

const char* to_string(SynthProfile p) {
    return p == SynthProfile::spring ? "spring" : "autumn";
}

void Scenario::validate() const {
    const std::size_t n = t0_c.size();
    if (ghi_wm2.size() != n || wind_ms.size() != n ||
        price_eur_kwh.size() != n) {
        throw ValidationError("scenario series lengths disagree");
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(t0_c[i]) || !std::isfinite(ghi_wm2[i]) ||
            !std::isfinite(wind_ms[i]) || !std::isfinite(price_eur_kwh[i])) {
            throw ValidationError("non-finite scenario value at " +
                                  format_iso8601_utc(time_at(i)));
        }
        if (ghi_wm2[i] < 0) {
            throw ValidationError("negative irradiance at " +
                                  format_iso8601_utc(time_at(i)));
        }
        if (wind_ms[i] < 0) {
            throw ValidationError("negative wind speed at " +
                                  format_iso8601_utc(time_at(i)));
        }
        if (price_eur_kwh[i] < 0) {
            throw ValidationError("negative price at " +
                                  format_iso8601_utc(time_at(i)) +
                                  "; negative spot prices are not supported");
        }
    }
}

namespace {

struct CsvTable {
    std::vector<std::int64_t> times;
    std::vector<std::vector<double>> cols;  // one vector per value column
};

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

double parse_number(const std::string& s, const std::string& where) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0') {
        throw ValidationError("bad number '" + s + "' " + where);
    }
    return v;
}

CsvTable read_hourly_csv(const std::string& path,
                         const std::vector<std::string>& expect_cols) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);

    std::string line;
    if (!std::getline(in, line)) throw ValidationError(path + ": empty file");
    {
        const auto header = split_csv_line(line);
        std::vector<std::string> want = {"timestamp"};
        want.insert(want.end(), expect_cols.begin(), expect_cols.end());
        if (header != want) {
            std::string msg = path + ": expected header ";
            for (std::size_t i = 0; i < want.size(); ++i) {
                msg += (i ? "," : "") + want[i];
            }
            throw ValidationError(msg);
        }
    }

    CsvTable t;
    t.cols.resize(expect_cols.size());
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty()) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != expect_cols.size() + 1) {
            throw ValidationError(path + ": row " + std::to_string(row) +
                                  " has " + std::to_string(fields.size()) +
                                  " fields");
        }
        const std::int64_t ts = parse_iso8601_utc(fields[0]);
        if (!t.times.empty()) {
            if (ts == t.times.back()) {
                throw ValidationError(path + ": duplicated timestamp " +
                                      fields[0] + " at row " +
                                      std::to_string(row));
            }
            if (ts < t.times.back()) {
                throw ValidationError(path + ": non-monotone timestamp " +
                                      fields[0] + " at row " +
                                      std::to_string(row));
            }
            if (ts != t.times.back() + 3600) {
                throw ValidationError(
                    path + ": gap before " + fields[0] + " at row " +
                    std::to_string(row) + " (missing " +
                    format_iso8601_utc(t.times.back() + 3600) + ")");
            }
        }
        t.times.push_back(ts);
        for (std::size_t c = 0; c < expect_cols.size(); ++c) {
            t.cols[c].push_back(parse_number(
                fields[c + 1],
                "in " + path + " row " + std::to_string(row)));
        }
    }
    if (t.times.empty()) throw ValidationError(path + ": no data rows");
    return t;
}

}  // namespace

Scenario load_scenario(const std::string& weather_path,
                       const std::string& price_path) {
    const CsvTable weather =
        read_hourly_csv(weather_path, {"t2m_c", "ghi_wm2", "wind_ms"});
    const CsvTable price = read_hourly_csv(price_path, {"price_eur_kwh"});

    const std::int64_t start = std::max(weather.times.front(), price.times.front());
    const std::int64_t stop = std::min(weather.times.back(), price.times.back());
    if (start > stop) {
        throw ValidationError("weather and price files do not overlap in time");
    }

    const std::size_t w0 = static_cast<std::size_t>((start - weather.times.front()) / 3600);
    const std::size_t p0 = static_cast<std::size_t>((start - price.times.front()) / 3600);
    const std::size_t n = static_cast<std::size_t>((stop - start) / 3600) + 1;

    Scenario s;
    s.start_time = start;
    s.t0_c.assign(weather.cols[0].begin() + w0, weather.cols[0].begin() + w0 + n);
    s.ghi_wm2.assign(weather.cols[1].begin() + w0, weather.cols[1].begin() + w0 + n);
    s.wind_ms.assign(weather.cols[2].begin() + w0, weather.cols[2].begin() + w0 + n);
    s.price_eur_kwh.assign(price.cols[0].begin() + p0, price.cols[0].begin() + p0 + n);

    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s.ghi_wm2[i] < 0) {
            s.warnings.push_back("clamped negative irradiance " +
                                 std::to_string(s.ghi_wm2[i]) + " at " +
                                 format_iso8601_utc(s.time_at(i)));
            s.ghi_wm2[i] = 0.0;
        }
    }
    s.validate();
    return s;
}

namespace {

std::string fmt_sig(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

}  // namespace

double round_sig(double x, int digits) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.*g", digits, x);
    return std::strtod(buf, nullptr);
}

void write_scenario(const Scenario& s, const std::string& weather_path,
                    const std::string& price_path) {
    std::ofstream w(weather_path);
    if (!w) throw IoError("cannot write " + weather_path);
    w << "timestamp,t2m_c,ghi_wm2,wind_ms\n";
    for (std::size_t i = 0; i < s.size(); ++i) {
        w << format_iso8601_utc(s.time_at(i)) << ',' << fmt_sig(s.t0_c[i])
          << ',' << fmt_sig(s.ghi_wm2[i]) << ',' << fmt_sig(s.wind_ms[i])
          << '\n';
    }
    if (!w.good()) throw IoError("failed writing " + weather_path);

    std::ofstream p(price_path);
    if (!p) throw IoError("cannot write " + price_path);
    p << "timestamp,price_eur_kwh\n";
    for (std::size_t i = 0; i < s.size(); ++i) {
        p << format_iso8601_utc(s.time_at(i)) << ','
          << fmt_sig(s.price_eur_kwh[i]) << '\n';
    }
    if (!p.good()) throw IoError("failed writing " + price_path);
}

Scenario synth_scenario(std::uint64_t seed, int days, SynthProfile profile) {
    if (days < 1) throw ValidationError("synthetic scenario needs days >= 1");
    const bool spring = profile == SynthProfile::spring;

    Scenario s;
    s.lat_deg = 59.91;
    s.lon_deg = 10.75;
    s.start_time = unix_from_civil(
        spring ? CivilTime{2024, 4, 15, 0, 0, 0} : CivilTime{2024, 10, 1, 0, 0, 0});

    std::seed_seq seq{static_cast<std::uint64_t>(spring ? 1 : 2), seed};
    std::mt19937_64 rng(seq);
    std::normal_distribution<double> gauss(0.0, 1.0);

    const int n = days * 24;
    s.t0_c.resize(n);
    s.ghi_wm2.resize(n);
    s.wind_ms.resize(n);
    s.price_eur_kwh.resize(n);

    const double temp_mean = spring ? 9.0 : 3.0;
    const double clearness_mean = spring ? 0.62 : 0.42;
    const double wind_mean = spring ? 5.5 : 7.0;
    const double price_base = spring ? 0.055 : 0.050;
    const double price_noise_sd = spring ? 0.018 : 0.011;

    double temp_anom = 0.0;
    double clearness = clearness_mean;
    double wind = wind_mean;
    double price_anom = 0.0;
    const forecast::ClearSkyModel cs{s.lat_deg, s.lon_deg};

    for (int i = 0; i < n; ++i) {
        const std::int64_t t = s.time_at(static_cast<std::size_t>(i));
        const int hod = hour_of_day(t);

        temp_anom = 0.98 * temp_anom + 0.35 * gauss(rng);
        const double t0 = temp_mean + temp_anom +
                          4.0 * std::sin((hod - 9.0) * 2.0 * M_PI / 24.0);

        clearness = std::clamp(
            clearness_mean + 0.85 * (clearness - clearness_mean) +
                0.10 * gauss(rng),
            0.15, 1.0);
        const double ghi = clearness * cs.irradiance_wm2(t);

        wind = std::max(0.0, wind_mean + 0.90 * (wind - wind_mean) +
                                 1.2 * gauss(rng));

        price_anom = 0.95 * price_anom + price_noise_sd * gauss(rng);
        const double morning = std::exp(-0.5 * std::pow((hod - 8.0) / 2.2, 2));
        const double evening = std::exp(-0.5 * std::pow((hod - 18.5) / 2.5, 2));
        const double price =
            std::max(0.001, price_base + 0.055 * morning + 0.075 * evening +
                                price_anom);

        s.t0_c[i] = round_sig(t0, 9);
        s.ghi_wm2[i] = round_sig(ghi, 9);
        s.wind_ms[i] = round_sig(wind, 9);
        s.price_eur_kwh[i] = round_sig(price, 9);
    }
    s.validate();
    return s;
}

}  // namespace vpp::io
