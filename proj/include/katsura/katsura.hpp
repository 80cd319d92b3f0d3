#pragma once

#include "katsura/core.hpp"
#include "katsura/decisions.hpp"
#include "katsura/inverse_semigroup.hpp"
#include "katsura/ktheory.hpp"
#include "katsura/matrix_core.hpp"
#include "katsura/path_space.hpp"
#include "katsura/semigroupoid.hpp"
#include "katsura/text_format.hpp"
