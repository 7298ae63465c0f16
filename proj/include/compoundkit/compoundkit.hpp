#pragma once

#include "compoundkit/compound.hpp"
#include "compoundkit/diag_stability.hpp"
#include "compoundkit/dynamics.hpp"
#include "compoundkit/geometry.hpp"
#include "compoundkit/hankel.hpp"
#include "compoundkit/index_sets.hpp"
#include "compoundkit/matrix.hpp"
#include "compoundkit/measures.hpp"
#include "compoundkit/positivity.hpp"
#include "compoundkit/rng.hpp"
#include "compoundkit/sign_tools.hpp"
#include "compoundkit/spectral.hpp"
#include "compoundkit/systems.hpp"
#include "compoundkit/verdict.hpp"
