#pragma once

#include "lowrank/core.hpp"
#include "lowrank/cpqr.hpp"
#include "lowrank/cur.hpp"
#include "lowrank/hartley.hpp"
#include "lowrank/id.hpp"
#include "lowrank/io.hpp"
#include "lowrank/matgen.hpp"
#include "lowrank/rng.hpp"
#include "lowrank/sketch.hpp"
#include "lowrank/solve.hpp"
#include "lowrank/svd.hpp"
#include "lowrank/verify.hpp"
