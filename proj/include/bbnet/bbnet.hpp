#pragma once

#include "bbnet/core.hpp"
#include "bbnet/cost.hpp"
#include "bbnet/generator.hpp"
#include "bbnet/harness.hpp"
#include "bbnet/instance_io.hpp"
#include "bbnet/report_io.hpp"
#include "bbnet/solvers.hpp"
#include "bbnet/svg.hpp"
