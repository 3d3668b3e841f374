#pragma once

#include "tasep/collapse.hpp"
#include "tasep/conjectures.hpp"
#include "tasep/exact_solve.hpp"
#include "tasep/io.hpp"
#include "tasep/montecarlo.hpp"
#include "tasep/numeric.hpp"
#include "tasep/seqcomb.hpp"
#include "tasep/stationary.hpp"
#include "tasep/treebij.hpp"
#include "tasep/verify.hpp"
