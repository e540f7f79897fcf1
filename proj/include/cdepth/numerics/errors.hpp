// Copyright 2026 The central-depth Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace cdepth {

// Exit-code families used by the CLI: config 2, data 3, numeric 4.
enum class ErrorCategory { Config, Data, Numeric };

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, std::string kind, const std::string& message)
      : std::runtime_error(message), category_(category), kind_(std::move(kind)) {}

  ErrorCategory category() const noexcept { return category_; }
  const std::string& kind() const noexcept { return kind_; }

 private:
  ErrorCategory category_;
  std::string kind_;
};

#define CDEPTH_DEFINE_ERROR(Name, Category)                  \
  class Name : public Error {                                \
   public:                                                   \
    explicit Name(const std::string& message)                \
        : Error(ErrorCategory::Category, #Name, message) {}  \
  }

CDEPTH_DEFINE_ERROR(RankError, Numeric);
CDEPTH_DEFINE_ERROR(EmptyComplementError, Numeric);
CDEPTH_DEFINE_ERROR(SymmetryError, Numeric);
CDEPTH_DEFINE_ERROR(SingularCovarianceError, Numeric);
CDEPTH_DEFINE_ERROR(NormError, Numeric);
CDEPTH_DEFINE_ERROR(ShapeError, Config);
CDEPTH_DEFINE_ERROR(SizeError, Config);
CDEPTH_DEFINE_ERROR(BandDimensionError, Config);
CDEPTH_DEFINE_ERROR(SubsampleError, Config);
CDEPTH_DEFINE_ERROR(ColumnError, Config);
CDEPTH_DEFINE_ERROR(ConfigError, Config);
CDEPTH_DEFINE_ERROR(DegenerateSampleError, Data);
CDEPTH_DEFINE_ERROR(DomainError, Data);
CDEPTH_DEFINE_ERROR(ParseError, Data);
CDEPTH_DEFINE_ERROR(IoError, Data);

#undef CDEPTH_DEFINE_ERROR

}  // namespace cdepth
