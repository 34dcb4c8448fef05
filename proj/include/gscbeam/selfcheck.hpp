#ifndef GSCBEAM_SELFCHECK_HPP
#define GSCBEAM_SELFCHECK_HPP

#include <iosfwd>

namespace gscbeam {

// Quick property and oracle sweep over the toolkit, one PASS/FAIL line per
// check. Returns the number of failing checks.
int run_selfcheck(std::ostream& out);

// Per-iteration operation counts of the forgetting-factor mechanisms:
// the cost model next to a live instrumented count of this implementation.
void run_bench(std::ostream& out);

}  // namespace gscbeam

#endif
