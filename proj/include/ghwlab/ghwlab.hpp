#pragma once

// Umbrella header for the library (the CLI front end lives in cli.hpp).

#include "ghwlab/codes.hpp"
#include "ghwlab/cyclotomy.hpp"
#include "ghwlab/errors.hpp"
#include "ghwlab/field.hpp"
#include "ghwlab/ghw.hpp"
#include "ghwlab/rational.hpp"
#include "ghwlab/report.hpp"
#include "ghwlab/subspace.hpp"
