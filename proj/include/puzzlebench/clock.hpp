#pragma once

#include <chrono>
#include <cstdint>
#include <mutex>
#include <thread>

namespace puzzlebench {

// Time source + sleep, injectable so retry/rate-limit behavior is testable
// on a simulated clock. All times are microseconds on an arbitrary
// monotonic epoch.
class Clock {
 public:
  virtual ~Clock() = default;
  virtual std::int64_t now_micros() = 0;
  virtual void sleep_micros(std::int64_t micros) = 0;
};

class SystemClock final : public Clock {
 public:
  std::int64_t now_micros() override {
    return std::chrono::duration_cast<std::chrono::microseconds>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
  }
  void sleep_micros(std::int64_t micros) override {
    if (micros > 0) std::this_thread::sleep_for(std::chrono::microseconds(micros));
  }
};

// Simulated clock: sleeping advances time instantly. Thread-safe.
class FakeClock final : public Clock {
 public:
  explicit FakeClock(std::int64_t start_micros = 0) : now_(start_micros) {}

  std::int64_t now_micros() override {
    std::lock_guard<std::mutex> lock(mu_);
    return now_;
  }
  void sleep_micros(std::int64_t micros) override {
    std::lock_guard<std::mutex> lock(mu_);
    if (micros > 0) now_ += micros;
  }
  void advance_micros(std::int64_t micros) { sleep_micros(micros); }

 private:
  std::mutex mu_;
  std::int64_t now_;
};

}  // namespace puzzlebench
