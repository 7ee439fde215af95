#pragma once

// Umbrella header for the full library surface.

#include "loccrate/numeric.hpp"
#include "loccrate/states.hpp"
#include "loccrate/spectrum.hpp"
#include "loccrate/functionals.hpp"
#include "loccrate/rates.hpp"
#include "loccrate/monoid.hpp"
#include "loccrate/random.hpp"
#include "loccrate/protocols.hpp"
#include "loccrate/parse.hpp"
#include "loccrate/suites.hpp"
