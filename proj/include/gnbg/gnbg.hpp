#pragma once

// Umbrella header.

#include "gnbg/classify.hpp"
#include "gnbg/core.hpp"
#include "gnbg/errors.hpp"
#include "gnbg/evaluator.hpp"
#include "gnbg/generators.hpp"
#include "gnbg/harness.hpp"
#include "gnbg/io.hpp"
#include "gnbg/matrix.hpp"
#include "gnbg/optimizers.hpp"
#include "gnbg/random.hpp"
#include "gnbg/rotation.hpp"
#include "gnbg/transform.hpp"
