#pragma once

#include <functional>

namespace disp2d {

/// Row-parallel loop: body(i) for i in [0, n). Writes must be disjoint per i,
/// which keeps results bitwise independent of the thread count.
void parallel_for(int n, const std::function<void(int)>& body);

void set_thread_count(int n);   // 0 or 1 = serial
int thread_count();

} // namespace disp2d
