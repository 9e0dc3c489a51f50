#pragma once

#include <iosfwd>

namespace specaug {

// Compact invariant suite run by `specaug selftest`. Prints one line per
// check and returns the number of failures.
int run_selftest(std::ostream& out);

}  // namespace specaug
