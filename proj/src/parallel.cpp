#include "sdci/parallel.hpp"

#include <cstdlib>
#include <string>

namespace sdci {

std::size_t thread_count() {
  if (const char* env = std::getenv("SDCI_THREADS")) {
    try {
      long v = std::stol(env);
      if (v >= 1) return static_cast<std::size_t>(v);
    } catch (...) {
    }
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

}  // namespace sdci
