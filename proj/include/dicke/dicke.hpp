// Copyright 2026 The dicke-sim Authors
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


#ifndef DICKE_DICKE_HPP
#define DICKE_DICKE_HPP

#include "dicke/config.hpp"
#include "dicke/error_bounds.hpp"
#include "dicke/fermi_bose.hpp"
#include "dicke/hamiltonians.hpp"
#include "dicke/hilbert.hpp"
#include "dicke/lindblad.hpp"
#include "dicke/observables.hpp"
#include "dicke/runner.hpp"
#include "dicke/trotter.hpp"
#include "dicke/verify.hpp"

#endif  // DICKE_DICKE_HPP
