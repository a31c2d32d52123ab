#pragma once
// Umbrella header for the gateway placement toolkit.

#include "gwplan/bench.hpp"
#include "gwplan/config.hpp"
#include "gwplan/errors.hpp"
#include "gwplan/graph.hpp"
#include "gwplan/io.hpp"
#include "gwplan/oracle.hpp"
#include "gwplan/radio.hpp"
#include "gwplan/rng.hpp"
#include "gwplan/sf.hpp"
#include "gwplan/solver.hpp"
#include "gwplan/svg.hpp"
#include "gwplan/text.hpp"
#include "gwplan/topology.hpp"
