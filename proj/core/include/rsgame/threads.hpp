#pragma once

#include <functional>

namespace rsgame {

// Worker-parallelism cap for embarrassingly parallel loops (cost-table cells,
// simulation paths). Defaults to 1; results are independent of the setting.
void set_max_threads(int n);
int max_threads();

// Runs fn(k) for k in [0, n). Deterministic merge is the caller's job: fn
// must write only to its own slot.
void parallel_for(int n, const std::function<void(int)>& fn);

}  // namespace rsgame
