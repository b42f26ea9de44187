#pragma once

#include "orbitwave/log_scaled.hpp"
#include "orbitwave/specfun.hpp"
#include "orbitwave/quadrature.hpp"
#include "orbitwave/quantum.hpp"
#include "orbitwave/classical.hpp"
#include "orbitwave/oracle.hpp"
#include "orbitwave/analysis.hpp"
