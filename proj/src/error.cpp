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

#include "bgp/error.hpp"

namespace bgp
{

std::string_view to_string(ErrorCode code)
{
  switch (code) {
    case ErrorCode::kParse: return "parse error";
    case ErrorCode::kIo: return "io error";
    case ErrorCode::kGraphIntegrity: return "graph-integrity error";
    case ErrorCode::kNoStartLane: return "no-start-lane error";
    case ErrorCode::kDegenerateCluster: return "degenerate-cluster error";
    case ErrorCode::kUnreachableGoal: return "unreachable-goal error";
    case ErrorCode::kTooShort: return "too-short error";
    case ErrorCode::kAlignment: return "alignment error";
    case ErrorCode::kDimension: return "dimension error";
    case ErrorCode::kEmptyBoundarySet: return "empty-set error";
    case ErrorCode::kNoOverlap: return "no-overlap error";
    case ErrorCode::kNoFit: return "no-fit error";
    case ErrorCode::kNoPrediction: return "no-prediction error";
    case ErrorCode::kParameter: return "parameter error";
    case ErrorCode::kDegenerateWarp: return "degenerate-warp error";
  }
  return "error";
}

bool is_input_error(ErrorCode code)
{
  return code == ErrorCode::kParse || code == ErrorCode::kIo || code == ErrorCode::kGraphIntegrity;
}

}  // namespace bgp
