#pragma once

#include <chrono>
#include <cstdio>
#include <string>
#include <string_view>
#include <vector>

#include "pei/error.hpp"

namespace pei {

// Calendar day. Thin wrapper over sys_days so arithmetic is in whole days.
class Date {
public:
    constexpr Date() = default;
    constexpr explicit Date(std::chrono::sys_days d) : days_(d) {}
    constexpr Date(int y, unsigned m, unsigned d)
        : days_(std::chrono::year_month_day{std::chrono::year{y}, std::chrono::month{m},
                                            std::chrono::day{d}}) {}

    // Strict "YYYY-MM-DD"; throws ValidationError on anything else.
    static Date parse(std::string_view s) {
        auto fail = [&] { throw ValidationError("invalid date '" + std::string(s) + "'"); };
        if (s.size() != 10 || s[4] != '-' || s[7] != '-') fail();
        auto digits = [&](std::size_t pos, std::size_t len) {
            int v = 0;
            for (std::size_t i = pos; i < pos + len; ++i) {
                if (s[i] < '0' || s[i] > '9') fail();
                v = v * 10 + (s[i] - '0');
            }
            return v;
        };
        const int y = digits(0, 4);
        const int m = digits(5, 2);
        const int d = digits(8, 2);
        std::chrono::year_month_day ymd{std::chrono::year{y},
                                        std::chrono::month{static_cast<unsigned>(m)},
                                        std::chrono::day{static_cast<unsigned>(d)}};
        if (!ymd.ok()) fail();
        return Date(std::chrono::sys_days{ymd});
    }

    std::string str() const {
        const std::chrono::year_month_day ymd{days_};
        char buf[16];
        std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                      static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
        return buf;
    }

    constexpr std::chrono::sys_days days() const { return days_; }

    constexpr Date operator+(int n) const { return Date(days_ + std::chrono::days{n}); }
    constexpr Date operator-(int n) const { return Date(days_ - std::chrono::days{n}); }
    friend constexpr int operator-(Date a, Date b) {
        return static_cast<int>((a.days_ - b.days_).count());
    }
    friend constexpr auto operator<=>(Date, Date) = default;

private:
    std::chrono::sys_days days_{};
};

// Inclusive day range [from, to].
inline std::vector<Date> day_range(Date from, Date to) {
    std::vector<Date> out;
    if (to < from) return out;
    out.reserve(static_cast<std::size_t>(to - from + 1));
    for (Date d = from; d <= to; d = d + 1) out.push_back(d);
    return out;
}

}  // namespace pei
