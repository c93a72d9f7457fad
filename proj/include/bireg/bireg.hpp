#pragma once

// Umbrella header for the bifunction regularization library.

#include "bireg/error.hpp"
#include "bireg/grid.hpp"
#include "bireg/verdict.hpp"
#include "bireg/expr.hpp"
#include "bireg/envelope.hpp"
#include "bireg/bifunction.hpp"
#include "bireg/properties.hpp"
#include "bireg/solvers.hpp"
#include "bireg/existence.hpp"
