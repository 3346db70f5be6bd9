#pragma once

#include "catfield/error.hpp"
#include "catfield/category.hpp"
#include "catfield/rig.hpp"
#include "catfield/kernels.hpp"
#include "catfield/linalg.hpp"
#include "catfield/algebra.hpp"
#include "catfield/causal.hpp"
#include "catfield/states.hpp"
#include "catfield/gns.hpp"
#include "catfield/dynamics.hpp"
#include "catfield/theorems.hpp"
#include "catfield/io.hpp"
