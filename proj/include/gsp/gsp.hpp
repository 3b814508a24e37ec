#pragma once

#include "gsp/error.hpp"
#include "gsp/random.hpp"
#include "gsp/graph.hpp"
#include "gsp/spectral.hpp"
#include "gsp/localization.hpp"
#include "gsp/uncertainty.hpp"
#include "gsp/sampling.hpp"
#include "gsp/lp.hpp"
#include "gsp/sparse_noise.hpp"
#include "gsp/strategies.hpp"
#include "gsp/config.hpp"
#include "gsp/table.hpp"
#include "gsp/experiments.hpp"
#include "gsp/signal_io.hpp"
