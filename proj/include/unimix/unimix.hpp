#pragma once

#include "unimix/diagnostics.hpp"
#include "unimix/errors.hpp"
#include "unimix/fixtures.hpp"
#include "unimix/io.hpp"
#include "unimix/likelihood.hpp"
#include "unimix/math.hpp"
#include "unimix/model.hpp"
#include "unimix/rng.hpp"
#include "unimix/simulation.hpp"
#include "unimix/universal.hpp"
