#include "eaward/time.hpp"

#include "eaward/error.hpp"

#include <array>
#include <cstdio>

namespace eaward {

namespace {

struct Fields {
    int year;
    unsigned month, day, hour, minute, second;
};

Fields split(UtcTime t)
{
    using namespace std::chrono;
    auto day = floor<days>(t);
    year_month_day ymd{day};
    hh_mm_ss hms{t - day};
    return {static_cast<int>(ymd.year()), static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
        static_cast<unsigned>(hms.hours().count()), static_cast<unsigned>(hms.minutes().count()),
        static_cast<unsigned>(hms.seconds().count())};
}

} // namespace

std::string format_iso8601(UtcTime t)
{
    auto f = split(t);
    char buf[32];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02u:%02u:%02uZ", f.year, f.month, f.day, f.hour, f.minute, f.second);
    return buf;
}

UtcTime parse_iso8601(std::string_view text)
{
    auto bad = [&] { return Error(ErrorCode::InvalidDocument, "timestamp '" + std::string(text) + "' is not YYYY-MM-DDTHH:MM:SSZ"); };
    constexpr std::string_view shape = "dddd-dd-ddTdd:dd:ddZ";
    if (text.size() != shape.size())
        throw bad();
    for (std::size_t i = 0; i < shape.size(); ++i) {
        bool ok = shape[i] == 'd' ? (text[i] >= '0' && text[i] <= '9') : text[i] == shape[i];
        if (!ok)
            throw bad();
    }
    auto num = [&](std::size_t pos, std::size_t len) {
        int v = 0;
        for (std::size_t i = pos; i < pos + len; ++i)
            v = v * 10 + (text[i] - '0');
        return v;
    };
    using namespace std::chrono;
    year_month_day ymd{year{num(0, 4)}, month{static_cast<unsigned>(num(5, 2))}, day{static_cast<unsigned>(num(8, 2))}};
    int h = num(11, 2), m = num(14, 2), s = num(17, 2);
    if (!ymd.ok() || h > 23 || m > 59 || s > 59)
        throw bad();
    return sys_days{ymd} + hours{h} + minutes{m} + seconds{s};
}

std::string format_long_utc(UtcTime t)
{
    static constexpr std::array<const char*, 12> months{"January", "February", "March", "April", "May", "June", "July",
        "August", "September", "October", "November", "December"};
    auto f = split(t);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%u %s %d at %02u:%02u:%02u UTC", f.day, months[f.month - 1], f.year, f.hour, f.minute, f.second);
    return buf;
}

UtcTime now_utc()
{
    return std::chrono::floor<std::chrono::seconds>(std::chrono::system_clock::now());
}

} // namespace eaward
