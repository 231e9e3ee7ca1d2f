#pragma once

#include "chaoslab/error.hpp"
#include "chaoslab/kernels.hpp"
#include "chaoslab/mc_engine.hpp"
#include "chaoslab/numeric.hpp"
#include "chaoslab/poisson_example.hpp"
#include "chaoslab/poisson_moments.hpp"
#include "chaoslab/poisson_process.hpp"
#include "chaoslab/rng.hpp"
#include "chaoslab/series.hpp"
#include "chaoslab/two_point.hpp"
#include "chaoslab/variables.hpp"
