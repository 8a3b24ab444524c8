#pragma once

#include "voronoi/arith.hpp"
#include "voronoi/codec.hpp"
#include "voronoi/cone.hpp"
#include "voronoi/errors.hpp"
#include "voronoi/facelattice.hpp"
#include "voronoi/forms.hpp"
#include "voronoi/io.hpp"
#include "voronoi/isometry.hpp"
#include "voronoi/lattice.hpp"
#include "voronoi/minvec.hpp"
#include "voronoi/parallel.hpp"
#include "voronoi/verify.hpp"
#include "voronoi/voronoi.hpp"
