#pragma once

#include "errors.hpp"
#include "field.hpp"
#include "poly.hpp"
#include "circle.hpp"
#include "laurent.hpp"
#include "ratfunc.hpp"
#include "matrix.hpp"
#include "jet.hpp"
#include "forms.hpp"
#include "presented.hpp"
#include "signature.hpp"
#include "matrixrep.hpp"
#include "represent.hpp"
