#pragma once

#include "dqft/errors.hpp"
#include "dqft/quaternion.hpp"
#include "dqft/dual_quaternion.hpp"
#include "dqft/screw.hpp"
#include "dqft/spectral.hpp"
#include "dqft/fast_transform.hpp"
#include "dqft/filters.hpp"
#include "dqft/signal_io.hpp"
#include "dqft/spectrum_io.hpp"
