#pragma once

#include "picmonoid/error.hpp"
#include "picmonoid/arith.hpp"
#include "picmonoid/ext_int.hpp"
#include "picmonoid/prime_set.hpp"
#include "picmonoid/divisors.hpp"
#include "picmonoid/padic.hpp"
#include "picmonoid/picard.hpp"
#include "picmonoid/adeles.hpp"
#include "picmonoid/frames.hpp"
#include "picmonoid/covers.hpp"
#include "picmonoid/explicit_formula.hpp"
#include "picmonoid/serialization.hpp"
