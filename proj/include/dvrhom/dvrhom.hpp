#pragma once

#include "dvrhom/complex.hpp"
#include "dvrhom/digraph.hpp"
#include "dvrhom/error.hpp"
#include "dvrhom/field.hpp"
#include "dvrhom/fundamental_group.hpp"
#include "dvrhom/fx_map.hpp"
#include "dvrhom/generators.hpp"
#include "dvrhom/homology.hpp"
#include "dvrhom/smith.hpp"
