#pragma once

#include "trm/analysis.hpp"
#include "trm/crn.hpp"
#include "trm/errors.hpp"
#include "trm/exact.hpp"
#include "trm/flux.hpp"
#include "trm/grid.hpp"
#include "trm/integrate.hpp"
#include "trm/ramps.hpp"
#include "trm/schemes.hpp"
