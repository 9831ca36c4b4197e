#pragma once

namespace fmtk {

/// Selects between the OpenMP kernels and their serial reference versions. Both
/// produce identical results.
enum class Execution { Serial, Parallel };

/// Number of OpenMP threads available (1 when built without OpenMP).
int max_threads();

}  // namespace fmtk
