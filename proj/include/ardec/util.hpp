#pragma once

#include <cstdlib>
#include <exception>
#include <functional>
#include <iostream>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace ardec {

// Diagnostics verbosity, read once from the DECOMP_LOG environment variable.
inline int log_level() {
  static const int lvl = [] {
    const char* e = std::getenv("DECOMP_LOG");
    return e ? std::atoi(e) : 0;
  }();
  return lvl;
}

inline void log_note(int level, const std::string& msg) {
  if (log_level() >= level) std::cerr << "[ardec] " << msg << "\n";
}

namespace detail {

// Runs fn(i) for i in [0, n). With jobs > 1 indices are striped across
// threads; fn must be safe to call concurrently for distinct i.
inline void parallel_for(std::ptrdiff_t n, int jobs,
                         const std::function<void(std::ptrdiff_t)>& fn) {
  if (n <= 0) return;
  if (jobs <= 1 || n == 1) {
    for (std::ptrdiff_t i = 0; i < n; ++i) fn(i);
    return;
  }
  const int nt = static_cast<int>(std::min<std::ptrdiff_t>(jobs, n));
  std::vector<std::thread> threads;
  std::exception_ptr first_error;
  std::mutex error_mutex;
  threads.reserve(static_cast<std::size_t>(nt));
  for (int t = 0; t < nt; ++t) {
    threads.emplace_back([&, t] {
      try {
        for (std::ptrdiff_t i = t; i < n; i += nt) fn(i);
      } catch (...) {
        std::scoped_lock lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& th : threads) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace detail
}  // namespace ardec
