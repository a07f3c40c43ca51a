#pragma once

#include "laplan/anneal.hpp"
#include "laplan/constraints.hpp"
#include "laplan/cost.hpp"
#include "laplan/io.hpp"
#include "laplan/model.hpp"
#include "laplan/netgen.hpp"
#include "laplan/oracle.hpp"
#include "laplan/rng.hpp"
#include "laplan/topology.hpp"
