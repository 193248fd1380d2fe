#pragma once

#include "mbprk/canonical.hpp"
#include "mbprk/certificate.hpp"
#include "mbprk/errors.hpp"
#include "mbprk/integrator.hpp"
#include "mbprk/linalg.hpp"
#include "mbprk/presets.hpp"
#include "mbprk/report.hpp"
#include "mbprk/rng.hpp"
#include "mbprk/spatial.hpp"
#include "mbprk/stepping.hpp"
#include "mbprk/tableau.hpp"
#include "mbprk/tableau_io.hpp"
#include "mbprk/trace.hpp"
