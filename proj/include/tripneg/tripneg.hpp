// tripneg.hpp — umbrella header (everything except the GSL-backed spectral checks)

#pragma once

#include "tripneg/config.hpp"
#include "tripneg/core.hpp"
#include "tripneg/csv.hpp"
#include "tripneg/dynamics.hpp"
#include "tripneg/entanglement.hpp"
#include "tripneg/errors.hpp"
#include "tripneg/esd.hpp"
#include "tripneg/parse.hpp"
#include "tripneg/presets.hpp"
#include "tripneg/runner.hpp"
