#pragma once

#include "diagsum/constants.hpp"
#include "diagsum/errors.hpp"
#include "diagsum/experiments.hpp"
#include "diagsum/exponent.hpp"
#include "diagsum/forms.hpp"
#include "diagsum/normest.hpp"
#include "diagsum/rational.hpp"
#include "diagsum/rng.hpp"
#include "diagsum/scalar.hpp"
#include "diagsum/spaces.hpp"
#include "diagsum/tensor_io.hpp"
