#ifndef CENTROID_CENTROID_HPP
#define CENTROID_CENTROID_HPP

#include "centroid/bodies.hpp"
#include "centroid/centroid_support.hpp"
#include "centroid/convergence.hpp"
#include "centroid/errors.hpp"
#include "centroid/geometric_constants.hpp"
#include "centroid/linalg.hpp"
#include "centroid/parallel.hpp"
#include "centroid/polar_volume.hpp"
#include "centroid/polytope.hpp"
#include "centroid/quadrature.hpp"
#include "centroid/rng.hpp"
#include "centroid/sections.hpp"
#include "centroid/special_functions.hpp"

#endif
