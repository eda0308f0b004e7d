#pragma once

#include "streamzero/numeric.hpp"
#include "streamzero/errors.hpp"
#include "streamzero/laurent_poly.hpp"
#include "streamzero/resultant.hpp"
#include "streamzero/stream.hpp"
#include "streamzero/quad_irr.hpp"
#include "streamzero/roots.hpp"
#include "streamzero/inverse.hpp"
#include "streamzero/torus.hpp"
#include "streamzero/dynamics.hpp"
#include "streamzero/structure.hpp"
#include "streamzero/int_matrix.hpp"
#include "streamzero/continued_fraction.hpp"
#include "streamzero/automorphisms.hpp"
