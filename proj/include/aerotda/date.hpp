#pragma once

#include <chrono>
#include <cstdint>
#include <string>

namespace aerotda {

using Date = std::chrono::year_month_day;

/// Parses YYYY-MM-DD; throws Parse on malformed or impossible dates.
Date parse_date(const std::string& s);
std::string format_date(const Date& d);

/// UTC calendar date of an epoch timestamp.
Date date_of(std::int64_t epoch_seconds);
/// Epoch seconds at 00:00 UTC of `d`.
std::int64_t midnight(const Date& d);

}  // namespace aerotda
