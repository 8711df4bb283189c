#pragma once

#include "padicval/bound_engine.hpp"
#include "padicval/exact_arith.hpp"
#include "padicval/padic_log.hpp"
#include "padicval/polynomial.hpp"
#include "padicval/prime.hpp"
#include "padicval/series.hpp"
