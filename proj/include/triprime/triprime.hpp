#pragma once

#include "triprime/arith.hpp"
#include "triprime/bound_report.hpp"
#include "triprime/characters.hpp"
#include "triprime/errors.hpp"
#include "triprime/group_set.hpp"
#include "triprime/l_function.hpp"
#include "triprime/lemma_suites.hpp"
#include "triprime/parallel.hpp"
#include "triprime/report.hpp"
#include "triprime/sieve.hpp"
#include "triprime/sumsets.hpp"
#include "triprime/unit_group.hpp"
#include "triprime/verifier.hpp"
