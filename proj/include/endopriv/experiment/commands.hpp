#pragma once

#include <iosfwd>

namespace endopriv::experiment {

enum ExitCode : int {
    kExitOk = 0,
    kExitValidationFailed = 1,
    kExitConfigError = 2,
    kExitIoError = 3,
};

/// Entry point shared by the executable and the integration tests.
///
///   endopriv solve    --config run.json
///   endopriv sweep    --config run.json [--out table.csv]
///   endopriv validate --config run.json [--seed S]
///   endopriv plot     [table.csv] [--config run.json] [--out plot.svg]
///
/// Global flags --grid N and --tol X override the solver settings.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace endopriv::experiment
