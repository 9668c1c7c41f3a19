#pragma once

#include "rreach/config.hpp"
#include "rreach/errors.hpp"
#include "rreach/fit.hpp"
#include "rreach/io.hpp"
#include "rreach/lattice.hpp"
#include "rreach/matrix.hpp"
#include "rreach/montecarlo.hpp"
#include "rreach/numeric.hpp"
#include "rreach/oracle.hpp"
#include "rreach/parallel.hpp"
#include "rreach/polynomial.hpp"
#include "rreach/propagation.hpp"
#include "rreach/section.hpp"
#include "rreach/string_model.hpp"
#include "rreach/transfer.hpp"
