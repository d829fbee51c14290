#include "puzzlebench/ratelimit.hpp"

namespace puzzlebench {

void RateLimiter::acquire() {
  if (per_minute_ == 0) return;
  std::unique_lock<std::mutex> lock(mu_);
  for (;;) {
    const std::int64_t now = clock_.now_micros();
    while (!grants_.empty() && grants_.front() < now - kWindowMicros) {
      grants_.pop_front();
    }
    if (grants_.size() < per_minute_) {
      grants_.push_back(now);
      return;
    }
    // Earliest instant at which the oldest grant leaves every window that
    // would also contain a grant issued now.
    const std::int64_t wake = grants_.front() + kWindowMicros + 1;
    const std::int64_t wait = wake - now;
    lock.unlock();
    clock_.sleep_micros(wait);
    lock.lock();
  }
}

}  // namespace puzzlebench
