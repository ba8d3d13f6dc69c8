/*
 * Copyright 2026 The aptvdf Authors
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#ifndef APTVDF_APTVDF_HPP
#define APTVDF_APTVDF_HPP

#include <aptvdf/dpr_model.hpp>
#include <aptvdf/error.hpp>
#include <aptvdf/filter_core.hpp>
#include <aptvdf/fixed_point.hpp>
#include <aptvdf/io.hpp>
#include <aptvdf/power_trace.hpp>
#include <aptvdf/prototype_design.hpp>

#endif // APTVDF_APTVDF_HPP
