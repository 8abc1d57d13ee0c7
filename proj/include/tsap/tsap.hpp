#pragma once

#include "tsap/city.hpp"
#include "tsap/colony.hpp"
#include "tsap/config.hpp"
#include "tsap/dataio.hpp"
#include "tsap/evaluator.hpp"
#include "tsap/geo.hpp"
#include "tsap/oracle.hpp"
#include "tsap/physics.hpp"
#include "tsap/random.hpp"
#include "tsap/temporal.hpp"
