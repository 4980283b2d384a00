#pragma once

#include "aparam/asymptotes.hpp"
#include "aparam/bipoly.hpp"
#include "aparam/bounds.hpp"
#include "aparam/compose.hpp"
#include "aparam/division.hpp"
#include "aparam/epsgeo.hpp"
#include "aparam/error.hpp"
#include "aparam/evidence.hpp"
#include "aparam/familygen.hpp"
#include "aparam/io.hpp"
#include "aparam/lattice.hpp"
#include "aparam/maximize.hpp"
#include "aparam/paramalg.hpp"
#include "aparam/pencil.hpp"
#include "aparam/ratfun.hpp"
#include "aparam/report.hpp"
#include "aparam/resultant.hpp"
#include "aparam/roots.hpp"
#include "aparam/scalar.hpp"
#include "aparam/unipoly.hpp"
