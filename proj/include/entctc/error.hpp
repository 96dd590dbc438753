// Copyright 2026 The entctc Authors. All Rights Reserved.
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

#ifndef ENTCTC_ERROR_HPP_
#define ENTCTC_ERROR_HPP_

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace entctc {

enum class ErrorCode {
  kInvalidArgument = 1,
  kUnknownSymbol,
  kIndexOutOfRange,
  kBlankInText,
  kMalformedBracket,
  kNestedSpan,
  kHalfLabeled,
  kInvalidAlphabet,
  kIo,
  kBadMagic,
  kVersionUnsupported,
  kShapeMismatch,
  kNotNormalized,
  kChecksumMismatch,
  kInvalidLabel,
  kInfeasibleLabel,
  kInstanceTooLarge,
  kParse,
  kCountMismatch,
  kMissingSection,
  kEmptyCorpus,
  kLengthMismatch,
};

const char* error_code_name(ErrorCode code) noexcept;

// Every failure in the library is reported by throwing Error. `position()`
// carries a character offset, frame index or line number, depending on the
// code; `item()` is set by batch operations to the failing element.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        std::optional<std::size_t> position = std::nullopt)
      : std::runtime_error(message), code_(code), position_(position) {}

  ErrorCode code() const noexcept { return code_; }
  std::optional<std::size_t> position() const noexcept { return position_; }
  std::optional<std::size_t> item() const noexcept { return item_; }

  Error with_item(std::size_t item) const {
    Error copy(code_, "item " + std::to_string(item) + ": " + what(), position_);
    copy.item_ = item;
    return copy;
  }

 private:
  ErrorCode code_;
  std::optional<std::size_t> position_;
  std::optional<std::size_t> item_;
};

}  // namespace entctc

#endif  // ENTCTC_ERROR_HPP_
