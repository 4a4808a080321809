#pragma once

#include "confalg/scalar.hpp"
#include "confalg/hopf.hpp"
#include "confalg/ncpoly.hpp"
#include "confalg/pseudo.hpp"
#include "confalg/freeconf.hpp"
#include "confalg/expr.hpp"
#include "confalg/json_io.hpp"
#include "confalg/random.hpp"
