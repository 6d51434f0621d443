#pragma once

#include "rigidity/combinations.hpp"
#include "rigidity/conjecture.hpp"
#include "rigidity/error.hpp"
#include "rigidity/exact_linalg.hpp"
#include "rigidity/graph.hpp"
#include "rigidity/json_io.hpp"
#include "rigidity/partition.hpp"
#include "rigidity/random.hpp"
#include "rigidity/rigidity.hpp"
#include "rigidity/sparsity.hpp"
