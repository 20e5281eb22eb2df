#pragma once

#include "neurochan/design.hpp"
#include "neurochan/errors.hpp"
#include "neurochan/frames.hpp"
#include "neurochan/intermittency.hpp"
#include "neurochan/io.hpp"
#include "neurochan/lattice.hpp"
#include "neurochan/lifting.hpp"
#include "neurochan/numerics.hpp"
#include "neurochan/plant.hpp"
#include "neurochan/quantize.hpp"
#include "neurochan/uncertainty.hpp"
