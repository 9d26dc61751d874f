/*
 * Copyright 2026 The DSA Toolkit Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef DSA_DSA_HPP_
#define DSA_DSA_HPP_

#include "dsa/auditor.hpp"
#include "dsa/construction.hpp"
#include "dsa/errors.hpp"
#include "dsa/gf.hpp"
#include "dsa/infocalc.hpp"
#include "dsa/linalg.hpp"
#include "dsa/oracle.hpp"
#include "dsa/rank_condition.hpp"
#include "dsa/rational.hpp"
#include "dsa/rng.hpp"
#include "dsa/scheme.hpp"
#include "dsa/scheme_io.hpp"
#include "dsa/sim.hpp"

#endif  // DSA_DSA_HPP_
