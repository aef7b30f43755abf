// Copyright 2026 The uqclone Authors
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

#include "uqclone/error_model.hpp"
#include "uqclone/errors.hpp"
#include "uqclone/gates.hpp"
#include "uqclone/harness.hpp"
#include "uqclone/hilbert.hpp"
#include "uqclone/network.hpp"
#include "uqclone/optics.hpp"
#include "uqclone/pipeline.hpp"
#include "uqclone/random.hpp"
#include "uqclone/tomography.hpp"
