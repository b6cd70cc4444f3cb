// Umbrella header for the CPC power-analysis library.
#pragma once

#include "cpc/circuit_file.hpp"
#include "cpc/compensate.hpp"
#include "cpc/decomposition.hpp"
#include "cpc/errors.hpp"
#include "cpc/metrics.hpp"
#include "cpc/netlist.hpp"
#include "cpc/spectrum.hpp"
#include "cpc/waveform.hpp"
