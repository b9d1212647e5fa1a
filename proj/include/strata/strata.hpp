#pragma once

#include "strata/canonical.hpp"
#include "strata/enumerate.hpp"
#include "strata/errors.hpp"
#include "strata/graph.hpp"
#include "strata/invariance.hpp"
#include "strata/io.hpp"
#include "strata/pushforward.hpp"
#include "strata/rational.hpp"
#include "strata/report.hpp"
#include "strata/taut_class.hpp"
#include "strata/verifier.hpp"
