#pragma once

#include "rational.hpp"
#include "qkernel.hpp"
#include "asym.hpp"
#include "weyl.hpp"
#include "tiling.hpp"
#include "quad.hpp"
#include "series.hpp"
#include "catalog.hpp"
#include "report.hpp"
