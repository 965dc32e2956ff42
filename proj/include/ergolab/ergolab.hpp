#pragma once

#include "algebra.hpp"
#include "angle.hpp"
#include "averages.hpp"
#include "discrepancy.hpp"
#include "generators.hpp"
#include "matrix.hpp"
#include "nil.hpp"
#include "phase.hpp"
#include "polynomial.hpp"
#include "rational.hpp"
#include "torus.hpp"
#include "weyl.hpp"
