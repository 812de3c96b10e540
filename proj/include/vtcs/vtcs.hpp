#pragma once

#include "vtcs/config.hpp"
#include "vtcs/control.hpp"
#include "vtcs/counterfactual.hpp"
#include "vtcs/dataio.hpp"
#include "vtcs/detect.hpp"
#include "vtcs/geometry.hpp"
#include "vtcs/parallel.hpp"
#include "vtcs/pipeline.hpp"
#include "vtcs/render.hpp"
#include "vtcs/stats.hpp"
#include "vtcs/synth.hpp"
#include "vtcs/timing.hpp"
#include "vtcs/types.hpp"
