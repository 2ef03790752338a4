#pragma once

#include "lumawm/attacks.hpp"
#include "lumawm/codec.hpp"
#include "lumawm/colorspace.hpp"
#include "lumawm/error.hpp"
#include "lumawm/metrics.hpp"
#include "lumawm/pixmap.hpp"
#include "lumawm/selection.hpp"
