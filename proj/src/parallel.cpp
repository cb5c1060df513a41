#include "ddgf/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

namespace ddgf {

namespace {

int default_threads() {
  if (const char* env = std::getenv("DDGF_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n > 0) return n;
    } catch (...) {
    }
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

std::atomic<int>& configured() {
  static std::atomic<int> n{default_threads()};
  return n;
}

}  // namespace

int thread_count() { return configured().load(); }

void set_thread_count(int n) { configured().store(n > 0 ? n : default_threads()); }

}  // namespace ddgf
