#pragma once

#include "bench.hpp"
#include "common.hpp"
#include "digraph.hpp"
#include "distances.hpp"
#include "dp.hpp"
#include "initial.hpp"
#include "io.hpp"
#include "plan.hpp"
#include "search.hpp"
