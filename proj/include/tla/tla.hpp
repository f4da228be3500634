#pragma once

#include "tla/algebra.hpp"
#include "tla/analysis.hpp"
#include "tla/cli.hpp"
#include "tla/common.hpp"
#include "tla/int_tuple.hpp"
#include "tla/layout.hpp"
#include "tla/oracle.hpp"
#include "tla/render.hpp"
#include "tla/stride.hpp"
#include "tla/tensor.hpp"
#include "tla/text.hpp"
