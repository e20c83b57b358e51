#pragma once

#include "adversary.hpp"
#include "aoi.hpp"
#include "aoi_tracker.hpp"
#include "channel.hpp"
#include "closed_loop.hpp"
#include "detection.hpp"
#include "detector_table.hpp"
#include "emit.hpp"
#include "errors.hpp"
#include "rng.hpp"
#include "scenario.hpp"
#include "scenario_io.hpp"
#include "simulator.hpp"
#include "sweep.hpp"
#include "units.hpp"
