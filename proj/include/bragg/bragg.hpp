#pragma once

// Umbrella header for the Bragg grating simulator and signal toolkit.

#include "bragg/beat.hpp"
#include "bragg/broadening.hpp"
#include "bragg/commands.hpp"
#include "bragg/config.hpp"
#include "bragg/constants.hpp"
#include "bragg/csv.hpp"
#include "bragg/demod.hpp"
#include "bragg/fft.hpp"
#include "bragg/fir.hpp"
#include "bragg/lattice.hpp"
#include "bragg/lines.hpp"
#include "bragg/polarizability.hpp"
#include "bragg/presets.hpp"
#include "bragg/reflection.hpp"
#include "bragg/scattering.hpp"
#include "bragg/spectrum.hpp"
#include "bragg/sweep.hpp"
#include "bragg/transfer_matrix.hpp"
#include "bragg/validate.hpp"
#include "bragg/version.hpp"
#include "bragg/window.hpp"
