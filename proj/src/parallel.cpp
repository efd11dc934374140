#include "phasekit/parallel.hpp"

#include <omp.h>

#include <cstdlib>
#include <string>

namespace phasekit {

namespace {
int default_threads = -1;
}

void set_thread_cap(int n) {
  if (default_threads < 0) default_threads = omp_get_max_threads();
  omp_set_num_threads(n > 0 ? n : default_threads);
}

int thread_cap() { return omp_get_max_threads(); }

bool apply_thread_env() {
  const char* v = std::getenv("PHASEKIT_THREADS");
  if (!v) return true;
  try {
    std::size_t pos = 0;
    int n = std::stoi(v, &pos);
    if (pos != std::string(v).size() || n <= 0) return false;
    set_thread_cap(n);
    return true;
  } catch (...) {
    return false;
  }
}

}  // namespace phasekit
