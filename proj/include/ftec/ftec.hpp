#pragma once

#include "ftec/circuit.hpp"
#include "ftec/decode.hpp"
#include "ftec/encoding.hpp"
#include "ftec/experiment.hpp"
#include "ftec/extraction.hpp"
#include "ftec/noise.hpp"
#include "ftec/pauli.hpp"
#include "ftec/stab_code.hpp"
#include "ftec/state_sim.hpp"
