#pragma once

#include "topocode/caterpillar.hpp"
#include "topocode/coloring.hpp"
#include "topocode/graph.hpp"
#include "topocode/io_json.hpp"
#include "topocode/lattice.hpp"
#include "topocode/rla.hpp"
#include "topocode/topcode.hpp"
#include "topocode/topcode_matrix.hpp"
#include "topocode/transform.hpp"
#include "topocode/validate.hpp"
