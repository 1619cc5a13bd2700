#pragma once

#include "muexp/common.hpp"
#include "muexp/cut_matching.hpp"
#include "muexp/cut_player.hpp"
#include "muexp/decompose.hpp"
#include "muexp/dense_oracle.hpp"
#include "muexp/flow.hpp"
#include "muexp/graph.hpp"
#include "muexp/matching_player.hpp"
#include "muexp/spectral.hpp"
#include "muexp/trimming.hpp"
#include "muexp/verify.hpp"
