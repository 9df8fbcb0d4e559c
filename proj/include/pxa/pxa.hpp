#pragma once

// Umbrella header.

#include "pxa/canonical.hpp"
#include "pxa/delta.hpp"
#include "pxa/factorization.hpp"
#include "pxa/linear_solve.hpp"
#include "pxa/matrix.hpp"
#include "pxa/matrix_polynomials.hpp"
#include "pxa/number_field.hpp"
#include "pxa/polynomial.hpp"
#include "pxa/rational.hpp"
#include "pxa/solver.hpp"
