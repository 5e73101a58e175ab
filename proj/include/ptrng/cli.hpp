#pragma once

namespace ptrng {

/// Entry point of the ptrng command-line tool (generate / test / sweep).
/// Exit codes: 0 success, 1 usage or I/O error, 2 statistical failure.
int run_cli(int argc, const char* const* argv);

}  // namespace ptrng
