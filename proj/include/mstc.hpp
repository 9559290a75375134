// Copyright 2026 The MSTC Planner Authors
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

#ifndef MSTC_HPP_
#define MSTC_HPP_

#include "mstc/baselines.hpp"
#include "mstc/commands.hpp"
#include "mstc/graph.hpp"
#include "mstc/partition.hpp"
#include "mstc/plan_io.hpp"
#include "mstc/planner.hpp"
#include "mstc/raster.hpp"
#include "mstc/scenegen.hpp"
#include "mstc/stc.hpp"
#include "mstc/svg.hpp"
#include "mstc/terrain.hpp"
#include "mstc/types.hpp"

#endif  // MSTC_HPP_
