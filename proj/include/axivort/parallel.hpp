#pragma once

#include <functional>

namespace axivort {

/// Worker cap for all internal loops. 0 restores the default
/// (std::thread::hardware_concurrency()).
void set_num_threads(int n);
int num_threads();

/// Runs body(begin, end) over contiguous blocks of [0, n). Each index is
/// handled by exactly one worker and block boundaries do not depend on timing,
/// so results are independent of the thread count as long as body writes only
/// to per-index outputs. Exceptions from workers are rethrown in the caller.
void parallel_for(int n, const std::function<void(int, int)>& body);

}  // namespace axivort
