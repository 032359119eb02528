#pragma once

#include "sqw/angle.hpp"
#include "sqw/circuit.hpp"
#include "sqw/circuit_io.hpp"
#include "sqw/error.hpp"
#include "sqw/graph.hpp"
#include "sqw/graph_io.hpp"
#include "sqw/output.hpp"
#include "sqw/schedule.hpp"
#include "sqw/walk.hpp"
