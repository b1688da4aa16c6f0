#pragma once

#include "glambert/asymptotics.hpp"
#include "glambert/benchmark.hpp"
#include "glambert/branching.hpp"
#include "glambert/core.hpp"
#include "glambert/distribution.hpp"
#include "glambert/errors.hpp"
#include "glambert/params.hpp"
#include "glambert/series.hpp"
#include "glambert/series_value.hpp"
#include "glambert/studies.hpp"
