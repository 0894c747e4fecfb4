#pragma once

#include "coulombkit/algebra.hpp"
#include "coulombkit/chambers.hpp"
#include "coulombkit/degeneration.hpp"
#include "coulombkit/errors.hpp"
#include "coulombkit/expr.hpp"
#include "coulombkit/hypertoric.hpp"
#include "coulombkit/lattice.hpp"
#include "coulombkit/localized.hpp"
#include "coulombkit/monopole.hpp"
#include "coulombkit/poly.hpp"
#include "coulombkit/ratfunc.hpp"
#include "coulombkit/rational.hpp"
#include "coulombkit/series.hpp"
#include "coulombkit/theory_io.hpp"
