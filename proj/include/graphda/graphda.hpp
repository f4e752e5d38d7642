#pragma once

#include "graphda/common.hpp"
#include "graphda/graph.hpp"
#include "graphda/pcst.hpp"
#include "graphda/projections.hpp"
#include "graphda/losses.hpp"
#include "graphda/learners.hpp"
#include "graphda/metrics.hpp"
#include "graphda/datagen.hpp"
#include "graphda/io.hpp"
#include "graphda/harness.hpp"
