#pragma once

#include "qtomo/estimation.hpp"
#include "qtomo/io.hpp"
#include "qtomo/optics.hpp"
#include "qtomo/protocol.hpp"
#include "qtomo/random.hpp"
#include "qtomo/scenarios.hpp"
#include "qtomo/simulator.hpp"
#include "qtomo/state.hpp"
#include "qtomo/statinfo.hpp"
#include "qtomo/statistics.hpp"
#include "qtomo/study.hpp"
#include "qtomo/types.hpp"
