#pragma once

#include "mms/rational.hpp"
#include "mms/core.hpp"
#include "mms/validate.hpp"
#include "mms/set_system.hpp"
#include "mms/interval_scheduling.hpp"
#include "mms/knapsack.hpp"
#include "mms/independent_set.hpp"
#include "mms/valuation.hpp"
#include "mms/matching.hpp"
#include "mms/mms_oracle.hpp"
#include "mms/bundles.hpp"
#include "mms/divider.hpp"
#include "mms/driver.hpp"
#include "mms/adapters.hpp"
#include "mms/generators.hpp"
