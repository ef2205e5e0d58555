#pragma once

#include "urnlab/asymptotics.hpp"
#include "urnlab/distribution.hpp"
#include "urnlab/error.hpp"
#include "urnlab/history.hpp"
#include "urnlab/montecarlo.hpp"
#include "urnlab/numeric.hpp"
#include "urnlab/quadrature.hpp"
#include "urnlab/saddle.hpp"
#include "urnlab/series.hpp"
#include "urnlab/urn.hpp"
