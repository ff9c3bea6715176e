#pragma once

#include "hil/core/engine.hpp"
#include "hil/core/model.hpp"
#include "hil/core/value.hpp"
#include "hil/io/config.hpp"
#include "hil/io/trace.hpp"
#include "hil/models/acc.hpp"
#include "hil/models/behaviour.hpp"
#include "hil/models/environment.hpp"
#include "hil/scenarios/scenario.hpp"
