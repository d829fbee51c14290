#pragma once

#include <cstdint>
#include <deque>
#include <mutex>

#include "puzzlebench/clock.hpp"

namespace puzzlebench {

// Admission control guaranteeing at most `per_minute` grants inside any
// 60-second window (closed on both ends), with a full burst available up
// front. Implemented as a sliding log of grant timestamps rather than a
// refilling bucket: a bucket with burst == rate admits up to twice the rate
// inside a window that starts full, which would break the window guarantee.
// Shared process-wide per backend; thread-safe.
class RateLimiter {
 public:
  RateLimiter(std::uint32_t per_minute, Clock& clock)
      : per_minute_(per_minute), clock_(clock) {}

  // Blocks (via the clock's sleep) until a grant is admissible, then
  // records it. A zero limit disables limiting.
  void acquire();

 private:
  static constexpr std::int64_t kWindowMicros = 60'000'000;

  std::uint32_t per_minute_;
  Clock& clock_;
  std::mutex mu_;
  std::deque<std::int64_t> grants_;
};

}  // namespace puzzlebench
