#pragma once

#include "coneforge/algebra.hpp"
#include "coneforge/catalog.hpp"
#include "coneforge/cubic.hpp"
#include "coneforge/document.hpp"
#include "coneforge/errors.hpp"
#include "coneforge/full_report.hpp"
#include "coneforge/hsiang.hpp"
#include "coneforge/matrix.hpp"
#include "coneforge/numeric.hpp"
#include "coneforge/parallel.hpp"
#include "coneforge/polar.hpp"
#include "coneforge/polarize.hpp"
#include "coneforge/polynomial.hpp"
#include "coneforge/quasicomposition.hpp"
#include "coneforge/report.hpp"
#include "coneforge/scalar.hpp"
