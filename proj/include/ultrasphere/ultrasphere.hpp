#pragma once

// Umbrella header.

#include "ultrasphere/ckp.hpp"
#include "ultrasphere/common.hpp"
#include "ultrasphere/core.hpp"
#include "ultrasphere/figures.hpp"
#include "ultrasphere/flow.hpp"
#include "ultrasphere/improve.hpp"
#include "ultrasphere/numerics.hpp"
#include "ultrasphere/region.hpp"
#include "ultrasphere/spectral.hpp"
#include "ultrasphere/table.hpp"
#include "ultrasphere/verify.hpp"
