#pragma once

#include <string>

#include "grid.hpp"
#include "kvdoc.hpp"
#include "rng.hpp"

namespace nlslab {

// Named initial-datum profiles. The library spans the regimes the schemes
// care about: amplitudes crossing power-truncation thresholds, moduli
// straddling e^-3 for the logarithmic split, and compactly supported bumps
// for damping extinction.
GridFunction gaussian_datum(const GridPtr& grid, const std::vector<double>& center,
                            double width, double amplitude);
GridFunction sinemode_datum(const GridPtr& grid, int kx, int ky, double amplitude);
// radial shell exp(-(|x-c|-radius)^2/(2w^2)) with an optional phase winding
GridFunction ring_datum(const GridPtr& grid, const std::vector<double>& center,
                        double radius, double width, double amplitude, int winding);
// C_c^infinity bump amplitude * exp(1 - 1/(1-s^2)), s = |x-c|/width
GridFunction bump_datum(const GridPtr& grid, const std::vector<double>& center,
                        double width, double amplitude);

// [initial] section: profile = gaussian | sinemode | ring | bump | file
GridFunction initial_datum_from_config(const GridPtr& grid, const KvDoc& doc);

// random fields for the verification ensembles: sine synthesis with spectral
// decay |c_k| ~ |k|^-decay and seeded phases; decay picked against the H1
// budget (decay = 1.5 in 1D / 2.0 in 2D sits at the H1 threshold)
GridFunction random_spectral_field(const GridPtr& grid, Rng& rng, double decay);
GridFunction random_pointwise_field(const GridPtr& grid, Rng& rng);

}  // namespace nlslab
