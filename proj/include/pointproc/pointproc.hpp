#pragma once

// Umbrella header: point processes as composable seeded samplers over bags,
// exact finite-support engines for the countable cases, and compositional
// intensity measures.

#include "pointproc/ast.hpp"
#include "pointproc/bag.hpp"
#include "pointproc/bag_dist.hpp"
#include "pointproc/compile.hpp"
#include "pointproc/discrete_dist.hpp"
#include "pointproc/errors.hpp"
#include "pointproc/format.hpp"
#include "pointproc/intensity.hpp"
#include "pointproc/io.hpp"
#include "pointproc/parse.hpp"
#include "pointproc/point.hpp"
#include "pointproc/process.hpp"
#include "pointproc/region.hpp"
#include "pointproc/rng.hpp"
#include "pointproc/verify.hpp"
