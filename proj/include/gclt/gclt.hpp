#pragma once

#include "gclt/decorated.hpp"
#include "gclt/errors.hpp"
#include "gclt/finite_model.hpp"
#include "gclt/fock.hpp"
#include "gclt/graphons.hpp"
#include "gclt/graphs.hpp"
#include "gclt/io.hpp"
#include "gclt/limit_law.hpp"
#include "gclt/partitions.hpp"
#include "gclt/scalar.hpp"
