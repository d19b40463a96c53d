#pragma once

#include "indg/error.hpp"
#include "indg/graph.hpp"
#include "indg/graph_io.hpp"
#include "indg/dominating_set.hpp"
#include "indg/game.hpp"
#include "indg/instance_io.hpp"
#include "indg/best_response.hpp"
#include "indg/equilibrium.hpp"
#include "indg/hardness.hpp"
#include "indg/welfare.hpp"
#include "indg/random_graphs.hpp"
#include "indg/simulation.hpp"
