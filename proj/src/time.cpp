#include "vpp/time.hpp"

#include <cstdio>

#include "vpp/errors.hpp"

namespace vpp {

namespace {

// Howard Hinnant's days-from-civil algorithm.
std::int64_t days_from_civil(int y, int m, int d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153u * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, int& y, int& m, int& d) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t yy = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    d = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
    m = static_cast<int>(mp + (mp < 10 ? 3 : -9));
    y = static_cast<int>(yy + (m <= 2));
}

}  // namespace

std::int64_t unix_from_civil(const CivilTime& c) {
    return days_from_civil(c.year, c.month, c.day) * 86400 + c.hour * 3600 +
           c.minute * 60 + c.second;
}

CivilTime civil_from_unix(std::int64_t t) {
    std::int64_t days = t / 86400;
    std::int64_t rem = t % 86400;
    if (rem < 0) {
        rem += 86400;
        days -= 1;
    }
    CivilTime c{};
    civil_from_days(days, c.year, c.month, c.day);
    c.hour = static_cast<int>(rem / 3600);
    c.minute = static_cast<int>((rem % 3600) / 60);
    c.second = static_cast<int>(rem % 60);
    return c;
}

int day_of_year(std::int64_t t) {
    const CivilTime c = civil_from_unix(t);
    const std::int64_t jan1 = days_from_civil(c.year, 1, 1);
    const std::int64_t today = days_from_civil(c.year, c.month, c.day);
    return static_cast<int>(today - jan1) + 1;
}

int hour_of_day(std::int64_t t) { return civil_from_unix(t).hour; }

double fractional_hour(std::int64_t t) {
    const CivilTime c = civil_from_unix(t);
    return c.hour + c.minute / 60.0 + c.second / 3600.0;
}

std::int64_t parse_iso8601_utc(const std::string& s) {
    CivilTime c{};
    char sep = 0;
    char tail[8] = {0};
    int n = std::sscanf(s.c_str(), "%d-%d-%d%c%d:%d:%d%7s", &c.year, &c.month,
                        &c.day, &sep, &c.hour, &c.minute, &c.second, tail);
    if (n < 6) {
        throw ValidationError("unparseable timestamp: '" + s + "'");
    }
    if (sep != 'T' && sep != ' ') {
        throw ValidationError("unparseable timestamp: '" + s + "'");
    }
    const std::string rest = (n >= 8) ? tail : "";
    if (!rest.empty() && rest != "Z" && rest != "+00:00" && rest != "+0000") {
        throw ValidationError("timestamp must be UTC: '" + s + "'");
    }
    if (c.month < 1 || c.month > 12 || c.day < 1 || c.day > 31 || c.hour > 23 ||
        c.minute > 59 || c.second > 60) {
        throw ValidationError("timestamp out of range: '" + s + "'");
    }
    return unix_from_civil(c);
}

std::string format_iso8601_utc(std::int64_t t) {
    const CivilTime c = civil_from_unix(t);
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02dZ", c.year,
                  c.month, c.day, c.hour, c.minute, c.second);
    return buf;
}

}  // namespace vpp
