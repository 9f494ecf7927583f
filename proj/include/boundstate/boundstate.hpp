#pragma once

#include "boundstate/errors.hpp"
#include "boundstate/oracle.hpp"
#include "boundstate/phase_integral.hpp"
#include "boundstate/potential.hpp"
#include "boundstate/quadrature.hpp"
#include "boundstate/reference.hpp"
#include "boundstate/report.hpp"
#include "boundstate/rootfind.hpp"
#include "boundstate/transfer.hpp"
