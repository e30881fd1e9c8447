#pragma once

#include "arith/counting.hpp"
#include "arith/density.hpp"
#include "arith/finite_field.hpp"
#include "ce/ce.hpp"
#include "ce/linalg.hpp"
#include "ce/semifree.hpp"
#include "core/errors.hpp"
#include "core/laurent.hpp"
#include "core/multidegree.hpp"
#include "core/parallel.hpp"
#include "core/rational.hpp"
#include "core/series.hpp"
#include "core/table.hpp"
#include "decat/decat.hpp"
#include "decat/zeta.hpp"
#include "lmodel/model.hpp"
#include "space/closed_points.hpp"
#include "space/config.hpp"
#include "space/space.hpp"
#include "stab/stab.hpp"
