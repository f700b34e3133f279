#pragma once

#include "varcorr/correlation.hpp"
#include "varcorr/csv.hpp"
#include "varcorr/date.hpp"
#include "varcorr/errors.hpp"
#include "varcorr/report.hpp"
#include "varcorr/selftest.hpp"
#include "varcorr/series.hpp"
#include "varcorr/synthetic.hpp"
#include "varcorr/var.hpp"
