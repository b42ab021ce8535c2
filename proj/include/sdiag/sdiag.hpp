// Copyright 2026 The sdiag Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include "sdiag/array_kernel.hpp"
#include "sdiag/bipartite_multigraph.hpp"
#include "sdiag/canonical.hpp"
#include "sdiag/decompose.hpp"
#include "sdiag/diagram.hpp"
#include "sdiag/error.hpp"
#include "sdiag/evaluate.hpp"
#include "sdiag/finite_function.hpp"
#include "sdiag/functor.hpp"
#include "sdiag/optics.hpp"
#include "sdiag/rdiff.hpp"
#include "sdiag/readback.hpp"
#include "sdiag/segmented.hpp"
#include "sdiag/signature.hpp"
#include "sdiag/term.hpp"
#include "sdiag/tree.hpp"
#include "sdiag/wiring.hpp"
