#pragma once

/// Umbrella header: exact U- and V-statistics for multiplicatively
/// decomposable kernels via Möbius inversion over the partition lattice and
/// treewidth-guided tensor contraction.

#include "ustats/bruteforce.hpp"
#include "ustats/complexity.hpp"
#include "ustats/config.hpp"
#include "ustats/dcov.hpp"
#include "ustats/einsum.hpp"
#include "ustats/engine.hpp"
#include "ustats/errors.hpp"
#include "ustats/graph.hpp"
#include "ustats/hoif.hpp"
#include "ustats/kernel.hpp"
#include "ustats/motifs.hpp"
#include "ustats/notation.hpp"
#include "ustats/ordering.hpp"
#include "ustats/partition.hpp"
#include "ustats/tensor.hpp"
#include "ustats/treewidth.hpp"
