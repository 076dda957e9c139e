#pragma once

//! convenience umbrella for the whole library

#include "archimedean.hpp"
#include "copula.hpp"
#include "empirical.hpp"
#include "errors.hpp"
#include "fit.hpp"
#include "frailty.hpp"
#include "generators.hpp"
#include "marginals.hpp"
#include "radial.hpp"
#include "random.hpp"
#include "sklar.hpp"
#include "williamson.hpp"
