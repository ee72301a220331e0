#include "iwlab/parallel.hpp"

#include <atomic>

#include <omp.h>

namespace iwlab {

namespace {
std::atomic<bool> enabled{true};
}

void set_parallel(bool on) { enabled = on; }
bool parallel_enabled() { return enabled; }
int thread_count() { return enabled ? omp_get_max_threads() : 1; }

}  // namespace iwlab
