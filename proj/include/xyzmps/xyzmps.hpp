#pragma once

#include "types.hpp"
#include "pauli.hpp"
#include "model.hpp"
#include "state.hpp"
#include "mps.hpp"
#include "hamiltonian.hpp"
#include "observables.hpp"
#include "entanglement.hpp"
#include "ed.hpp"
