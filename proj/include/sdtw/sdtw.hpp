#pragma once

#include "sdtw/errors.hpp"
#include "sdtw/quadrature.hpp"
#include "sdtw/ode.hpp"
#include "sdtw/parallel.hpp"
#include "sdtw/alpha_shooting.hpp"
#include "sdtw/zero_structure.hpp"
#include "sdtw/residuals.hpp"
#include "sdtw/geometry.hpp"
#include "sdtw/c_shooting.hpp"
#include "sdtw/validation.hpp"
#include "sdtw/oracle.hpp"
#include "sdtw/report.hpp"
