#pragma once

// Umbrella header: the whole library.

#include "hybridfd/errors.hpp"
#include "hybridfd/geometry.hpp"
#include "hybridfd/rng.hpp"
#include "hybridfd/halton.hpp"
#include "hybridfd/kernels.hpp"
#include "hybridfd/operators.hpp"
#include "hybridfd/poly.hpp"
#include "hybridfd/csv.hpp"
#include "hybridfd/nodes.hpp"
#include "hybridfd/neighbors.hpp"
#include "hybridfd/dense.hpp"
#include "hybridfd/stencil.hpp"
#include "hybridfd/parallel.hpp"
#include "hybridfd/sparse.hpp"
#include "hybridfd/bessel.hpp"
#include "hybridfd/helmholtz.hpp"
#include "hybridfd/acoustic.hpp"
#include "hybridfd/config.hpp"
#include "hybridfd/experiments.hpp"
