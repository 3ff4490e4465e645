#pragma once

// Umbrella header: exact tensor-product decomposition for the classical
// families, with a stable-range recursive engine, a character-theoretic
// cross-check oracle, and persistent-cache/tabulation plumbing.

#include "cache.hpp"
#include "checked_math.hpp"
#include "decomposition.hpp"
#include "engine.hpp"
#include "errors.hpp"
#include "oracle.hpp"
#include "partition.hpp"
#include "pieri.hpp"
#include "reference_tables.hpp"
#include "root_system.hpp"
#include "text_format.hpp"
