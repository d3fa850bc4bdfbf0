// Distributed under the MIT License.
// See LICENSE.txt for details.

#include "efm/common.hpp"

#include <algorithm>
#include <atomic>

namespace efm {

namespace {
std::atomic<int> g_max_threads{1};
}

void set_max_threads(int count) { g_max_threads.store(std::max(1, count)); }
int max_threads() { return g_max_threads.load(); }

}  // namespace efm
