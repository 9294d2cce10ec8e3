#pragma once

#include "sdenum/addressable_pq.hpp"
#include "sdenum/enumerator.hpp"
#include "sdenum/factory.hpp"
#include "sdenum/generators.hpp"
#include "sdenum/graph.hpp"
#include "sdenum/lazy_array.hpp"
#include "sdenum/meter.hpp"
#include "sdenum/metering.hpp"
#include "sdenum/oracle.hpp"
#include "sdenum/search.hpp"
#include "sdenum/types.hpp"
