// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "arith.hpp"
#include "circle.hpp"
#include "complete.hpp"
#include "ergodic.hpp"
#include "errors.hpp"
#include "expsum.hpp"
#include "iw.hpp"
#include "newton.hpp"
#include "osc.hpp"
#include "poly.hpp"
#include "poly_parse.hpp"
#include "quadrature.hpp"
#include "report.hpp"
