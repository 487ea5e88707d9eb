#pragma once

#include "cases.hpp"
#include "cones.hpp"
#include "errors.hpp"
#include "generators.hpp"
#include "identities.hpp"
#include "integrals.hpp"
#include "io.hpp"
#include "kclass.hpp"
#include "laurent.hpp"
#include "matroid.hpp"
