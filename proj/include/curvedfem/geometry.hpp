#pragma once

#include "curvedfem/geometry/affine_core.hpp"
#include "curvedfem/geometry/affine_map.hpp"
#include "curvedfem/geometry/curved_correction.hpp"
#include "curvedfem/geometry/element_map.hpp"
