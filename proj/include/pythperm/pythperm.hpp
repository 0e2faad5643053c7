#pragma once

#include "pythperm/checked.hpp"
#include "pythperm/checkpoint.hpp"
#include "pythperm/eigen.hpp"
#include "pythperm/errors.hpp"
#include "pythperm/families.hpp"
#include "pythperm/multiset.hpp"
#include "pythperm/records.hpp"
#include "pythperm/search.hpp"
#include "pythperm/triples.hpp"
