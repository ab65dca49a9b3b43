#pragma once

#include "symdet/alternating.hpp"
#include "symdet/extract.hpp"
#include "symdet/factor.hpp"
#include "symdet/field.hpp"
#include "symdet/gadgets.hpp"
#include "symdet/matrix_json.hpp"
#include "symdet/poly.hpp"
#include "symdet/poly_io.hpp"
#include "symdet/quotient.hpp"
#include "symdet/symmat.hpp"
