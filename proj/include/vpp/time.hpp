#pragma once

#include <cstdint>
#include <string>

namespace vpp {

struct CivilTime {
    int year;
    int month;   // 1..12
    int day;     // 1..31
    int hour;    // 0..23
    int minute;  // 0..59
    int second;  // 0..59
};

// Civil <-> unix conversions (proleptic Gregorian, UTC only).
std::int64_t unix_from_civil(const CivilTime& c);
CivilTime civil_from_unix(std::int64_t t);

// 1 for Jan 1st.
int day_of_year(std::int64_t t);

// Hour of day in UTC, 0..23.
int hour_of_day(std::int64_t t);

// Fractional UTC hour, e.g. 13.5 for 13:30:00.
double fractional_hour(std::int64_t t);

// Accepts "YYYY-MM-DDTHH:MM:SSZ", the same with a space separator,
// "+00:00" offsets, and a bare "YYYY-MM-DD HH:MM". Throws ValidationError.
std::int64_t parse_iso8601_utc(const std::string& s);

// "YYYY-MM-DDTHH:MM:SSZ"
std::string format_iso8601_utc(std::int64_t t);

}  // namespace vpp
