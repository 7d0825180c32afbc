// Umbrella header.
#pragma once

#include "calculus.hpp"
#include "config.hpp"
#include "convex_analysis.hpp"
#include "convexity.hpp"
#include "criterion.hpp"
#include "deviatoric_plane.hpp"
#include "errors.hpp"
#include "meridian.hpp"
#include "random.hpp"
#include "sections.hpp"
#include "serialize.hpp"
#include "shapes.hpp"
#include "tensor.hpp"
