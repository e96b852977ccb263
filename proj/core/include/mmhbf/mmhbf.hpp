// SPDX-License-Identifier: Apache-2.0
//
// mmhbf: hybrid beamforming simulator for multi-cell millimeter-wave MIMO
// Copyright (C) 2026 The mmhbf authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef MMHBF_MMHBF_HPP
#define MMHBF_MMHBF_HPP

#include "mmhbf/array_geometry.hpp"
#include "mmhbf/beamforming.hpp"
#include "mmhbf/campaign.hpp"
#include "mmhbf/channel.hpp"
#include "mmhbf/config.hpp"
#include "mmhbf/errors.hpp"
#include "mmhbf/linalg.hpp"
#include "mmhbf/metrics.hpp"
#include "mmhbf/report.hpp"
#include "mmhbf/rng.hpp"

#endif
