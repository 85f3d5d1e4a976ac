#pragma once

#include "schurweyl/errors.hpp"
#include "schurweyl/rational.hpp"
#include "schurweyl/field.hpp"
#include "schurweyl/linalg.hpp"
#include "schurweyl/matrix.hpp"
#include "schurweyl/diagram.hpp"
#include "schurweyl/algebra.hpp"
#include "schurweyl/grading.hpp"
#include "schurweyl/tensor_action.hpp"
#include "schurweyl/commutant.hpp"
#include "schurweyl/combinatorics.hpp"
#include "schurweyl/duality.hpp"
