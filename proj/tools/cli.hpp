#pragma once

#include <ostream>

namespace nonint {

/// Exit codes: 0 success (for certify: NonCommutingGenerators), 1 error,
/// 2 certify finished Inconclusive.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace nonint
