#pragma once

#include "playground/config.hpp"
#include "playground/datagen.hpp"
#include "playground/features.hpp"
#include "playground/format.hpp"
#include "playground/frame.hpp"
#include "playground/heatmap.hpp"
#include "playground/network.hpp"
#include "playground/presets.hpp"
#include "playground/protocol.hpp"
#include "playground/rng.hpp"
#include "playground/runner.hpp"
#include "playground/session.hpp"
#include "playground/state_codec.hpp"
#include "playground/trainer.hpp"
