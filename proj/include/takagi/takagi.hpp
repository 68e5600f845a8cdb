#pragma once

#include "takagi/binary_expansion.hpp"
#include "takagi/expansion.hpp"
#include "takagi/humps.hpp"
#include "takagi/interval_oracle.hpp"
#include "takagi/level_set.hpp"
#include "takagi/local_level_set.hpp"
#include "takagi/rational.hpp"
#include "takagi/takagi_eval.hpp"
