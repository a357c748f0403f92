#pragma once

#include "uosp/analysis.hpp"
#include "uosp/binary_heap.hpp"
#include "uosp/bottleneck.hpp"
#include "uosp/dijkstra.hpp"
#include "uosp/errors.hpp"
#include "uosp/fib_heap.hpp"
#include "uosp/generators.hpp"
#include "uosp/graph.hpp"
#include "uosp/heap_common.hpp"
#include "uosp/report.hpp"
#include "uosp/ts_heap.hpp"
