/*
   Copyright 2026 The fibercount authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include "fibercount/bounds.hpp"
#include "fibercount/errors.hpp"
#include "fibercount/factorization.hpp"
#include "fibercount/fields.hpp"
#include "fibercount/hensel.hpp"
#include "fibercount/invariants.hpp"
#include "fibercount/numeric.hpp"
#include "fibercount/pipeline.hpp"
#include "fibercount/poly.hpp"
#include "fibercount/sieve.hpp"
#include "fibercount/valuation.hpp"
#include "fibercount/value_factor.hpp"
