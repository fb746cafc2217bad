#pragma once

#include "tec/module.h"

namespace tec {

// Bundled parameter set for the TEC1-12704 module, derived from its public
// rating envelope (see src/calibration.cpp). The same values ship as
// data/tec1-12704.json.
ModuleParams tec1_12704();

} // namespace tec
