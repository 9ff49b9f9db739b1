#pragma once

#include "smr/errors.hpp"
#include "smr/evaluate.hpp"
#include "smr/generate.hpp"
#include "smr/io.hpp"
#include "smr/minbp.hpp"
#include "smr/model.hpp"
#include "smr/oracle.hpp"
#include "smr/rational.hpp"
#include "smr/reductions.hpp"
#include "smr/sm_engine.hpp"
#include "smr/source.hpp"
#include "smr/sr_engine.hpp"
