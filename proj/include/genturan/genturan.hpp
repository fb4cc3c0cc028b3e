#pragma once

#include "genturan/approx.hpp"
#include "genturan/embedding.hpp"
#include "genturan/exact.hpp"
#include "genturan/gadgets.hpp"
#include "genturan/generators.hpp"
#include "genturan/graph.hpp"
#include "genturan/graph_io.hpp"
#include "genturan/homomorphism.hpp"
#include "genturan/matching.hpp"
#include "genturan/params.hpp"
#include "genturan/partition.hpp"
#include "genturan/pattern.hpp"
#include "genturan/rational.hpp"
#include "genturan/regularity.hpp"
#include "genturan/weighted_graph.hpp"
