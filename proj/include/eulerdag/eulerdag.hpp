#pragma once

#include "eulerdag/analysis.hpp"
#include "eulerdag/baseline.hpp"
#include "eulerdag/decomposition.hpp"
#include "eulerdag/graph.hpp"
#include "eulerdag/greedy.hpp"
#include "eulerdag/hierarchy.hpp"
#include "eulerdag/ingest.hpp"
#include "eulerdag/oracle.hpp"
#include "eulerdag/pipeline.hpp"
#include "eulerdag/refine.hpp"
#include "eulerdag/synthetic.hpp"
#include "eulerdag/working_graph.hpp"
