#pragma once

#include "coherent.hpp"
#include "csv.hpp"
#include "dynamics.hpp"
#include "grid.hpp"
#include "leggett_garg.hpp"
#include "log_amplitude.hpp"
#include "measurement.hpp"
#include "multipoles.hpp"
#include "operators.hpp"
#include "pfunction.hpp"
#include "qfunction.hpp"
#include "random_states.hpp"
#include "slots.hpp"
#include "spin.hpp"
#include "state.hpp"
#include "wigner.hpp"
