#pragma once

#include "namegame/distributions.hpp"
#include "namegame/dynamics.hpp"
#include "namegame/errors.hpp"
#include "namegame/ingestion.hpp"
#include "namegame/metrics.hpp"
#include "namegame/mutation.hpp"
#include "namegame/population.hpp"
#include "namegame/rng.hpp"
#include "namegame/text.hpp"
#include "namegame/version.hpp"
