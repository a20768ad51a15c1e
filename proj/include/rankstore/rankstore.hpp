#pragma once

#include "rankstore/errors.hpp"
#include "rankstore/random.hpp"
#include "rankstore/prime_field.hpp"
#include "rankstore/matrix.hpp"
#include "rankstore/ext_field.hpp"
#include "rankstore/linpoly.hpp"
#include "rankstore/gabidulin.hpp"
#include "rankstore/array_codes.hpp"
#include "rankstore/concat.hpp"
#include "rankstore/dss_sim.hpp"
#include "rankstore/lrc.hpp"
#include "rankstore/scenario.hpp"
