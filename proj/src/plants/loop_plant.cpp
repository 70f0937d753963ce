#include "tipi/plants/loop_plant.hpp"

// header-only; translation unit kept so the target layout stays uniform
namespace tipi::plants {}
