#pragma once

namespace spincorr {

/// Command-line entry point. Exit codes: 0 success, 1 usage or domain
/// error, 2 numerical non-convergence.
int cli_main(int argc, char** argv);

}  // namespace spincorr
