#pragma once

#include <iostream>

namespace spm {

/**
 * The `spm-bench` entry point. Returns 0 on success, 1 on a usage error,
 * and 2 when any benchmark cell failed to run.
 */
int cli_main(int argc, const char* const* argv, std::ostream& out = std::cout,
             std::ostream& err = std::cerr);

}  // namespace spm
