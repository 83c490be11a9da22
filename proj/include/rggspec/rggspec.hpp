#ifndef RGGSPEC_RGGSPEC_HPP
#define RGGSPEC_RGGSPEC_HPP

// Umbrella header: random/deterministic geometric graphs on the unit
// torus, their regularized normalized Laplacian spectra (dense, circulant,
// and closed-form routes), spectral distances, and seeded experiments.

#include "rggspec/analytic.hpp"
#include "rggspec/common.hpp"
#include "rggspec/config.hpp"
#include "rggspec/experiments.hpp"
#include "rggspec/geometry.hpp"
#include "rggspec/graphs.hpp"
#include "rggspec/io.hpp"
#include "rggspec/laplacian.hpp"
#include "rggspec/metrics.hpp"
#include "rggspec/spectra.hpp"

#endif  // RGGSPEC_RGGSPEC_HPP
