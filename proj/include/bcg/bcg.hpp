// Copyright 2026 The bcg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "bcg/embedding.hpp"
#include "bcg/error.hpp"
#include "bcg/game.hpp"
#include "bcg/io.hpp"
#include "bcg/lab.hpp"
#include "bcg/payoff.hpp"
#include "bcg/reduction.hpp"
#include "bcg/seq.hpp"
#include "bcg/solver.hpp"
#include "bcg/strategy.hpp"
#include "bcg/tree.hpp"
