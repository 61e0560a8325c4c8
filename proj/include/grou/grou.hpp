// SPDX-License-Identifier: Apache-2.0
#pragma once

// Umbrella header for the grou library: densities and their monotone-piece
// decompositions, transforms, acceptance regions, samplers, diagnostics,
// named presets and serialization.

#include "density.hpp"
#include "diagnostics.hpp"
#include "errors.hpp"
#include "io.hpp"
#include "numeric.hpp"
#include "presets.hpp"
#include "region.hpp"
#include "rng.hpp"
#include "sampler.hpp"
#include "support.hpp"
#include "targets.hpp"
#include "transform.hpp"
