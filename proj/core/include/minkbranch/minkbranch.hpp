#pragma once

#include "minkbranch/branch.hpp"
#include "minkbranch/eigen.hpp"
#include "minkbranch/errors.hpp"
#include "minkbranch/greens.hpp"
#include "minkbranch/numerics.hpp"
#include "minkbranch/problem.hpp"
#include "minkbranch/shoot.hpp"
#include "minkbranch/version.hpp"
