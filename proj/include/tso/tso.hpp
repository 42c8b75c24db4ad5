#pragma once

#include "tso/band.hpp"
#include "tso/dist.hpp"
#include "tso/error.hpp"
#include "tso/interval.hpp"
#include "tso/oracle.hpp"
#include "tso/payoff.hpp"
#include "tso/qc.hpp"
#include "tso/quadrature.hpp"
#include "tso/solver.hpp"
#include "tso/welfare.hpp"
