#include "dslab/parallel.hpp"

#include <omp.h>

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace dslab {

int resolve_thread_count(std::optional<int> requested) {
  if (requested) {
    if (*requested < 1) throw std::invalid_argument("thread count must be >= 1");
    return *requested;
  }
  if (const char* env = std::getenv("DSLAB_THREADS"); env != nullptr && *env != '\0') {
    std::size_t used = 0;
    int n = 0;
    try {
      n = std::stoi(env, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != std::string(env).size() || n < 1)
      throw std::invalid_argument(std::string("DSLAB_THREADS must be a positive integer, got '") +
                                  env + "'");
    return n;
  }
  return omp_get_max_threads();
}

void set_thread_count(int n) { omp_set_num_threads(n); }

int max_threads() { return omp_get_max_threads(); }

}  // namespace dslab
