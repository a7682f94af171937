#pragma once

#include "pitbound/arith.hpp"
#include "pitbound/cm_primes.hpp"
#include "pitbound/errors.hpp"
#include "pitbound/explicit_bounds.hpp"
#include "pitbound/field_params.hpp"
#include "pitbound/lambert_w.hpp"
#include "pitbound/ledger.hpp"
#include "pitbound/lemma_verifier.hpp"
#include "pitbound/prime_ideals.hpp"
#include "pitbound/quadratic_field.hpp"
#include "pitbound/quadrature.hpp"
#include "pitbound/ray_class_group.hpp"
#include "pitbound/sieve.hpp"
#include "pitbound/summation.hpp"
#include "pitbound/zeta.hpp"
