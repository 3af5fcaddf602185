#pragma once

// Umbrella header: algebra C[rho]/(rho^3), subspaces E_k, holomorphic
// expressions, monogenic extensions and the numerical verifiers.

#include "mono3/algebra.hpp"
#include "mono3/error.hpp"
#include "mono3/extension.hpp"
#include "mono3/holo.hpp"
#include "mono3/io.hpp"
#include "mono3/subspace.hpp"
#include "mono3/taylor.hpp"
#include "mono3/verify.hpp"
