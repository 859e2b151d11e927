#pragma once

#include "eqcenter/assignment.hpp"
#include "eqcenter/baseline.hpp"
#include "eqcenter/bench.hpp"
#include "eqcenter/core.hpp"
#include "eqcenter/dataset.hpp"
#include "eqcenter/eqsolver.hpp"
#include "eqcenter/instance.hpp"
#include "eqcenter/io.hpp"
#include "eqcenter/metric.hpp"
#include "eqcenter/metrics.hpp"
#include "eqcenter/oracle.hpp"
