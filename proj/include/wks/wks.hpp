#pragma once

#include "wks/adversary.hpp"
#include "wks/composer.hpp"
#include "wks/core_model.hpp"
#include "wks/errors.hpp"
#include "wks/feasibility.hpp"
#include "wks/labeling_oracle.hpp"
#include "wks/numeric.hpp"
#include "wks/offline_opt.hpp"
#include "wks/pattern_tree.hpp"
#include "wks/random.hpp"
#include "wks/rsp_engine.hpp"
#include "wks/spc.hpp"
