#pragma once

#include "error.hpp"
#include "rational.hpp"
#include "random.hpp"
#include "parallel.hpp"
#include "geom.hpp"
#include "polygon_ops.hpp"
#include "lp.hpp"
#include "transversal.hpp"
#include "chebyshev.hpp"
#include "codes.hpp"
#include "coding.hpp"
#include "deformation.hpp"
#include "bodies.hpp"
#include "scene.hpp"
#include "svg.hpp"
