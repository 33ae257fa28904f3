#pragma once

#include "spectral_t/error.hpp"
#include "spectral_t/words.hpp"
#include "spectral_t/multigraph.hpp"
#include "spectral_t/spectra.hpp"
#include "spectral_t/delta.hpp"
#include "spectral_t/rng.hpp"
#include "spectral_t/randmodels.hpp"
#include "spectral_t/maxflow.hpp"
#include "spectral_t/regularity.hpp"
#include "spectral_t/certify.hpp"
#include "spectral_t/verify.hpp"
