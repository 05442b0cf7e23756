#pragma once

// Umbrella header: the whole engine.

#include "graph.hpp"
#include "permutation.hpp"
#include "perm_group.hpp"
#include "partition.hpp"
#include "visitor.hpp"
#include "core.hpp"
#include "refine_wl1.hpp"
#include "target_cell.hpp"
#include "traversal.hpp"
#include "aut_pruner.hpp"
#include "implicit_size2.hpp"
#include "degree_one.hpp"
#include "invariants.hpp"
#include "stats.hpp"
#include "oracle.hpp"
#include "dimacs.hpp"
#include "generate.hpp"
#include "config.hpp"
