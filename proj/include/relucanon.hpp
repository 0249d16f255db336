// Copyright 2026 The relucanon Authors
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

#include "relucanon/arrangement.hpp"
#include "relucanon/breakline.hpp"
#include "relucanon/canonical.hpp"
#include "relucanon/error.hpp"
#include "relucanon/linalg.hpp"
#include "relucanon/minimality.hpp"
#include "relucanon/network.hpp"
#include "relucanon/pwa.hpp"
#include "relucanon/rational.hpp"
#include "relucanon/synthesis.hpp"
