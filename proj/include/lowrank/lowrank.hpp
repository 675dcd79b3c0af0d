#pragma once

// Umbrella header for the low-rank optimization toolkit: low-rank inducing
// Frobenius norms, their exact proximal operators, Douglas-Rachford
// splitting, constraint projections and a-posteriori tightness certificates.

#include "lowrank/certificates.hpp"
#include "lowrank/core.hpp"
#include "lowrank/io.hpp"
#include "lowrank/norms.hpp"
#include "lowrank/projections.hpp"
#include "lowrank/prox.hpp"
#include "lowrank/solver.hpp"
#include "lowrank/svd.hpp"
