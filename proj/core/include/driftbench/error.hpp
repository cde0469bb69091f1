// Copyright 2026 The driftbench Authors
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

#include <stdexcept>
#include <string>

namespace driftbench {

// Root of every exception thrown by the library. Each subclass names the
// failure category so callers (and the CLI) can map it to an exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define DRIFTBENCH_ERROR(Name)              \
  class Name : public Error {               \
   public:                                  \
    using Error::Error;                     \
  }

DRIFTBENCH_ERROR(DimensionError);
DRIFTBENCH_ERROR(DegenerateInputError);
DRIFTBENCH_ERROR(EmptyInputError);
DRIFTBENCH_ERROR(ParameterError);
DRIFTBENCH_ERROR(UsageError);
DRIFTBENCH_ERROR(InsufficientDataError);
DRIFTBENCH_ERROR(SchemaError);
DRIFTBENCH_ERROR(IoError);
DRIFTBENCH_ERROR(ParseError);
DRIFTBENCH_ERROR(ConfigError);
DRIFTBENCH_ERROR(NeighborError);

#undef DRIFTBENCH_ERROR

}  // namespace driftbench
