#pragma once

// Umbrella header. oracle.hpp is deliberately not included: it is the
// independent reference used by tests.

#include "schauder/bilinear.hpp"
#include "schauder/bound.hpp"
#include "schauder/construction.hpp"
#include "schauder/dimension.hpp"
#include "schauder/error.hpp"
#include "schauder/frames.hpp"
#include "schauder/generators.hpp"
#include "schauder/io.hpp"
#include "schauder/perturbation.hpp"
#include "schauder/space.hpp"
