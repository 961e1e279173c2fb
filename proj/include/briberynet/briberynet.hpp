#pragma once

#include "briberynet/aggregate.hpp"
#include "briberynet/bargaining.hpp"
#include "briberynet/comparative_statics.hpp"
#include "briberynet/errors.hpp"
#include "briberynet/golden_section.hpp"
#include "briberynet/model.hpp"
#include "briberynet/network.hpp"
#include "briberynet/parallel.hpp"
#include "briberynet/version.hpp"
