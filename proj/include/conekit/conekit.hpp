#pragma once

// Positivity toolkit for multivariate polynomials: exact sparse polynomial
// arithmetic, quadratic modules and preorderings over semialgebraic sets,
// sum-of-squares membership certificates, cone seminorm enclosures, moment
// functional duality, and seminorm-family topologies.

#include "conekit/archimedean.hpp"
#include "conekit/defaults.hpp"
#include "conekit/errors.hpp"
#include "conekit/feasibility.hpp"
#include "conekit/gram.hpp"
#include "conekit/json_io.hpp"
#include "conekit/linalg.hpp"
#include "conekit/moments.hpp"
#include "conekit/multi_index.hpp"
#include "conekit/polynomial.hpp"
#include "conekit/quadratic_module.hpp"
#include "conekit/rational.hpp"
#include "conekit/seminorm.hpp"
#include "conekit/topology.hpp"
