// Command-line entry points: solve / simulate / inspect.
#pragma once

namespace orbitraise {

/// Exit codes: 0 ok, 1 config or usage error, 2 numeric non-convergence,
/// 3 IO/archive failure.
int run_cli(int argc, const char* const* argv);

}  // namespace orbitraise
