#pragma once

#include "qig/charts.hpp"
#include "qig/core.hpp"
#include "qig/geometry.hpp"
#include "qig/gns.hpp"
#include "qig/matfun.hpp"
#include "qig/matrix_io.hpp"
#include "qig/modular.hpp"
#include "qig/rng.hpp"
#include "qig/states.hpp"
#include "qig/verify.hpp"
