/*
   Copyright 2026 the interp-lab authors

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

#ifndef INTERP_INTERP_HPP
#define INTERP_INTERP_HPP

#include "interp/annulus.hpp"
#include "interp/common.hpp"
#include "interp/couple.hpp"
#include "interp/errors.hpp"
#include "interp/finseq.hpp"
#include "interp/jcalculus.hpp"
#include "interp/laurent.hpp"
#include "interp/linmap.hpp"
#include "interp/pseudolattice.hpp"
#include "interp/repsolver.hpp"
#include "interp/seqops.hpp"
#include "interp/solver.hpp"

#endif  // INTERP_INTERP_HPP
