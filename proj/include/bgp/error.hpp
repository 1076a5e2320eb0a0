// Copyright 2026 The Boundary Guided Prediction Authors
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

#ifndef BGP__ERROR_HPP_
#define BGP__ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace bgp
{

enum class ErrorCode {
  kParse,
  kIo,
  kGraphIntegrity,
  kNoStartLane,
  kDegenerateCluster,
  kUnreachableGoal,
  kTooShort,
  kAlignment,
  kDimension,
  kEmptyBoundarySet,
  kNoOverlap,
  kNoFit,
  kNoPrediction,
  kParameter,
  kDegenerateWarp,
};

std::string_view to_string(ErrorCode code);

// Input errors are problems with the files handed to us; everything else is a pipeline failure.
bool is_input_error(ErrorCode code);

class Error : public std::runtime_error
{
public:
  Error(ErrorCode code, const std::string & what)
  : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code)
  {
  }

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

}  // namespace bgp

#endif  // BGP__ERROR_HPP_
