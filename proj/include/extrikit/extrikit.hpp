#pragma once

#include "field.hpp"
#include "matrix.hpp"
#include "quiver.hpp"
#include "module.hpp"
#include "endo.hpp"
#include "homological.hpp"
#include "knit.hpp"
#include "category.hpp"
#include "module_category.hpp"
#include "complexes.hpp"
#include "constructions.hpp"
#include "ar.hpp"
#include "pipeline.hpp"
#include "io.hpp"
