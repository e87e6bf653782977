#pragma once

// Umbrella header: automata algebra for finite languages, primality
// decomposition, concatenation equivalence, and the tiling reduction chain.

#include "automata.hpp"
#include "automata_ops.hpp"
#include "concat_equivalence.hpp"
#include "decomposition.hpp"
#include "io.hpp"
#include "reductions.hpp"
#include "tiling.hpp"
