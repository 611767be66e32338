#pragma once

// Torsional rigidity of planar regions: moment-based upper bounds, conformal evaluation,
// Rayleigh lower bounds and classical reference series.

#include "torsion/bergman.hpp"
#include "torsion/conformal.hpp"
#include "torsion/estimate.hpp"
#include "torsion/io.hpp"
#include "torsion/lowerbound.hpp"
#include "torsion/moments.hpp"
#include "torsion/opuc.hpp"
#include "torsion/reference.hpp"
#include "torsion/regions.hpp"
#include "torsion/verify.hpp"
