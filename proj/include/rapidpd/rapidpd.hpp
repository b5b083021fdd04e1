#pragma once

// In-vehicle presence detection from Wi-Fi channel state: simulation of the
// cabin multipath channel, subcarrier-direction correlation detection on
// one-second windows, a time-direction reference detector, and evaluation
// utilities. All components are header-only; include this to get everything.

#include "rapidpd/baseline.hpp"
#include "rapidpd/config.hpp"
#include "rapidpd/csi_io.hpp"
#include "rapidpd/detector.hpp"
#include "rapidpd/errors.hpp"
#include "rapidpd/frame.hpp"
#include "rapidpd/indicator.hpp"
#include "rapidpd/matrix.hpp"
#include "rapidpd/metrics.hpp"
#include "rapidpd/preprocess.hpp"
#include "rapidpd/propagation.hpp"
#include "rapidpd/rng.hpp"
#include "rapidpd/scenario.hpp"
#include "rapidpd/simulate.hpp"
#include "rapidpd/subcarrier_grid.hpp"
#include "rapidpd/windowing.hpp"
