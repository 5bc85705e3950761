#include "aerotda/date.hpp"

#include <cstdio>

#include "aerotda/error.hpp"

namespace aerotda {

Date parse_date(const std::string& s) {
  int y = 0;
  unsigned m = 0;
  unsigned d = 0;
  char tail = 0;
  if (s.size() != 10 || std::sscanf(s.c_str(), "%4d-%2u-%2u%c", &y, &m, &d, &tail) != 3 ||
      s[4] != '-' || s[7] != '-') {
    fail(ErrorKind::Parse, "malformed date '" + s + "' (expected YYYY-MM-DD)");
  }
  const Date date{std::chrono::year{y}, std::chrono::month{m}, std::chrono::day{d}};
  if (!date.ok()) fail(ErrorKind::Parse, "invalid calendar date '" + s + "'");
  return date;
}

std::string format_date(const Date& d) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(d.year()),
                static_cast<unsigned>(d.month()), static_cast<unsigned>(d.day()));
  return buf;
}

Date date_of(std::int64_t epoch_seconds) {
  using namespace std::chrono;
  const sys_seconds tp{seconds{epoch_seconds}};
  return year_month_day{floor<days>(tp)};
}

std::int64_t midnight(const Date& d) {
  using namespace std::chrono;
  return duration_cast<seconds>(sys_days{d}.time_since_epoch()).count();
}

}  // namespace aerotda
