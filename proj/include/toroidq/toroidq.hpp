#pragma once

#include "toroidq/config.hpp"
#include "toroidq/errors.hpp"
#include "toroidq/io.hpp"
#include "toroidq/linear.hpp"
#include "toroidq/master.hpp"
#include "toroidq/operators.hpp"
#include "toroidq/params.hpp"
#include "toroidq/presets.hpp"
#include "toroidq/pulse.hpp"
#include "toroidq/quadrature.hpp"
#include "toroidq/run.hpp"
#include "toroidq/semiclassical.hpp"
#include "toroidq/sweep.hpp"
#include "toroidq/units.hpp"
