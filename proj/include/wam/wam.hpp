#pragma once

#include "wam/amalgam.hpp"
#include "wam/common.hpp"
#include "wam/estimates.hpp"
#include "wam/fit.hpp"
#include "wam/gaussian.hpp"
#include "wam/grid.hpp"
#include "wam/parallel.hpp"
#include "wam/potential.hpp"
#include "wam/quadrature.hpp"
#include "wam/report.hpp"
#include "wam/sharpness.hpp"
#include "wam/spectral.hpp"
#include "wam/time_norm.hpp"
#include "wam/version.hpp"
#include "wam/window.hpp"
