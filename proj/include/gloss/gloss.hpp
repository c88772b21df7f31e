// Copyright 2026 The Gloss Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#pragma once

#include "gloss/error.hpp"
#include "gloss/scalars.hpp"
#include "gloss/identity.hpp"
#include "gloss/quantity.hpp"
#include "gloss/units.hpp"
#include "gloss/temporal.hpp"
#include "gloss/model.hpp"
#include "gloss/gazetteer.hpp"
#include "gloss/geo.hpp"
#include "gloss/xml/document.hpp"
#include "gloss/wire.hpp"
#include "gloss/trails.hpp"
#include "gloss/trail_io.hpp"
#include "gloss/interaction.hpp"
#include "gloss/eventd/framing.hpp"
#include "gloss/eventd/store.hpp"
#include "gloss/eventd/server.hpp"
