// Switch between the OpenMP kernels and the serial reference paths.
#pragma once

namespace iwlab {

void set_parallel(bool on);
bool parallel_enabled();
int thread_count();

// RAII toggle, restores the previous setting
class ParallelScope {
 public:
  explicit ParallelScope(bool on) : prev_(parallel_enabled()) { set_parallel(on); }
  ~ParallelScope() { set_parallel(prev_); }
  ParallelScope(const ParallelScope&) = delete;
  ParallelScope& operator=(const ParallelScope&) = delete;

 private:
  bool prev_;
};

}  // namespace iwlab
