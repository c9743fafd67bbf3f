#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace sphsamp {

/// Entry point of the sphsamp executable. Exit codes: 0 success, 1 numerical
/// failure or failed acceptance, 2 usage error.
int run(int argc, const char* const* argv);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sphsamp
