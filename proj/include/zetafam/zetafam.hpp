#pragma once

// Umbrella header for the numerical core.  The network transport lives in
// zetafam/http_transport.hpp so that offline users need not link OpenSSL.

#include "zetafam/errors.hpp"
#include "zetafam/arith.hpp"
#include "zetafam/units.hpp"
#include "zetafam/bernoulli.hpp"
#include "zetafam/polynomial.hpp"
#include "zetafam/numberfield.hpp"
#include "zetafam/dual.hpp"
#include "zetafam/hurwitz.hpp"
#include "zetafam/characters.hpp"
#include "zetafam/lseries.hpp"
#include "zetafam/analytic.hpp"
#include "zetafam/classdata.hpp"
#include "zetafam/parallel.hpp"
#include "zetafam/table.hpp"
#include "zetafam/family.hpp"
#include "zetafam/dbclient.hpp"
