#pragma once

#include "graphic_sums/admissible.hpp"
#include "graphic_sums/bounds.hpp"
#include "graphic_sums/connectivity.hpp"
#include "graphic_sums/cyclic.hpp"
#include "graphic_sums/digraph.hpp"
#include "graphic_sums/generators.hpp"
#include "graphic_sums/graph_class.hpp"
#include "graphic_sums/graph_io.hpp"
#include "graphic_sums/maxsum.hpp"
#include "graphic_sums/minsum_exact.hpp"
#include "graphic_sums/minsum_numeric.hpp"
#include "graphic_sums/parallel.hpp"
#include "graphic_sums/sum_eval.hpp"
