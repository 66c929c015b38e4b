#pragma once

#include "esscirc/angles.hpp"
#include "esscirc/bases.hpp"
#include "esscirc/bessel.hpp"
#include "esscirc/circular_stats.hpp"
#include "esscirc/dataset.hpp"
#include "esscirc/ess.hpp"
#include "esscirc/experiments.hpp"
#include "esscirc/inference.hpp"
#include "esscirc/moments.hpp"
#include "esscirc/rng.hpp"
#include "esscirc/selection.hpp"
#include "esscirc/skewing.hpp"
