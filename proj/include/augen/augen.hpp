#pragma once

#include "augen/affine.hpp"
#include "augen/baselines.hpp"
#include "augen/bench.hpp"
#include "augen/error.hpp"
#include "augen/image.hpp"
#include "augen/image_io.hpp"
#include "augen/manifest.hpp"
#include "augen/metrics.hpp"
#include "augen/param_set.hpp"
#include "augen/pipeline.hpp"
#include "augen/rng.hpp"
