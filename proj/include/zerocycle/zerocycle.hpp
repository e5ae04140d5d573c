#pragma once

// Umbrella header: effective local invariants of polynomial zero sets
// (vanishing order, local cycle degree, Weierstrass slice degree) and
// verification of Lojasiewicz-type inequalities, pointwise and in families.

#include "errors.hpp"
#include "family.hpp"
#include "io.hpp"
#include "local_geometry.hpp"
#include "lojasiewicz.hpp"
#include "matrix.hpp"
#include "multipoly.hpp"
#include "region.hpp"
#include "rng.hpp"
#include "roots.hpp"
#include "scalar.hpp"
#include "unipoly.hpp"
#include "version.hpp"
