#pragma once

#include "mbl/analytic.hpp"
#include "mbl/config.hpp"
#include "mbl/errors.hpp"
#include "mbl/integrator.hpp"
#include "mbl/lindblad.hpp"
#include "mbl/model.hpp"
#include "mbl/output.hpp"
#include "mbl/quantum.hpp"
#include "mbl/sweep.hpp"
