// qclone.hpp
// Umbrella header for the cloning laboratory.

#pragma once

#include "qclone/capacity.hpp"
#include "qclone/eavesdrop.hpp"
#include "qclone/linalg.hpp"
#include "qclone/optimize.hpp"
#include "qclone/qmath.hpp"
#include "qclone/statedep.hpp"
#include "qclone/teleport.hpp"
#include "qclone/universal.hpp"
#include "qclone/verify.hpp"
