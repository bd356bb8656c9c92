#pragma once

#include "fneval/benchmark.hpp"
#include "fneval/cpu_clock.hpp"
#include "fneval/dispatch.hpp"
#include "fneval/error.hpp"
#include "fneval/evaluators.hpp"
#include "fneval/expr.hpp"
#include "fneval/numeric.hpp"
#include "fneval/parser.hpp"
#include "fneval/render.hpp"
#include "fneval/report.hpp"
#include "fneval/suite.hpp"
#include "fneval/transform.hpp"
