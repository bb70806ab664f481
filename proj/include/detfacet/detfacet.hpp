#pragma once

#include "detfacet/error.hpp"
#include "detfacet/field.hpp"
#include "detfacet/ring.hpp"
#include "detfacet/groebner.hpp"
#include "detfacet/complex.hpp"
#include "detfacet/detideal.hpp"
#include "detfacet/decompose.hpp"
#include "detfacet/resolution.hpp"
#include "detfacet/io.hpp"
