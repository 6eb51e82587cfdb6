#pragma once

#include "oqt/io/config.hpp"

namespace oqt {

// Executes one configured run, writing every artifact under config.out.
// Returns the process exit status: 0 on success, 3 when inference collapses
// (no particle can explain a datum).
int run(const RunConfig& config);

}  // namespace oqt
