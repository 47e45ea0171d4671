// Runtime kernel selection.  The choice is made once, at first use, and
// never changes afterwards, so all reductions in a process run through a
// single implementation (bitwise-reproducible reruns).

#include "linalg/kernels.h"

namespace linalg {
namespace detail {

const KernelTable& active() {
  static const KernelTable* const table = [] {
#if defined(__x86_64__)
    if (avx2_supported()) return &avx2_table;
#endif
    return &scalar_table;
  }();
  return *table;
}

}  // namespace detail

const char* active_kernel_set() { return detail::active().name; }

}  // namespace linalg
