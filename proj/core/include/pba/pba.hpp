#pragma once

#include "pba/algebra.hpp"
#include "pba/analysis.hpp"
#include "pba/bitset.hpp"
#include "pba/cliques.hpp"
#include "pba/errors.hpp"
#include "pba/lp.hpp"
#include "pba/rational.hpp"
#include "pba/sat.hpp"
#include "pba/saturation.hpp"
#include "pba/scenario.hpp"
#include "pba/tensor.hpp"
#include "pba/union_find.hpp"
