#pragma once

#include <ctime>
#include <string>

#include "fneval/error.hpp"

namespace fneval {

// Process CPU time (user + system) via clock_gettime. The benchmark is
// single-threaded, so this is the CPU time of the measuring thread plus
// whatever the process spends in the kernel, which is negligible for
// pure arithmetic loops.
class CpuClock {
 public:
  CpuClock() {
    timespec res{};
    if (clock_getres(CLOCK_PROCESS_CPUTIME_ID, &res) != 0)
      throw ClockUnavailable("CLOCK_PROCESS_CPUTIME_ID is not supported");
    resolution_ = static_cast<double>(res.tv_sec) +
                  static_cast<double>(res.tv_nsec) * 1e-9;
  }

  double now_seconds() const noexcept {
    timespec ts{};
    clock_gettime(CLOCK_PROCESS_CPUTIME_ID, &ts);
    return static_cast<double>(ts.tv_sec) +
           static_cast<double>(ts.tv_nsec) * 1e-9;
  }

  double resolution_seconds() const noexcept { return resolution_; }

  static std::string description() {
    return "clock_gettime(CLOCK_PROCESS_CPUTIME_ID), process CPU time";
  }

 private:
  double resolution_ = 0.0;
};

}  // namespace fneval
