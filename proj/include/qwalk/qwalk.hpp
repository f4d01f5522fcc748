#pragma once

#include "qwalk/config.hpp"
#include "qwalk/csv.hpp"
#include "qwalk/distribution.hpp"
#include "qwalk/errors.hpp"
#include "qwalk/limit.hpp"
#include "qwalk/metrics.hpp"
#include "qwalk/momentum.hpp"
#include "qwalk/rational.hpp"
#include "qwalk/rng.hpp"
#include "qwalk/run_config.hpp"
#include "qwalk/state.hpp"
#include "qwalk/types.hpp"
#include "qwalk/walk.hpp"
