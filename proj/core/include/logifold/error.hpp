#pragma once

#include <stdexcept>
#include <string>

namespace logifold {

// Base of every typed error raised by the library. kind() is the stable
// error name surfaced by the command-line tool.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* kind() const noexcept = 0;
};

#define LOGIFOLD_DEFINE_ERROR(Name)                                  \
  class Name : public Error {                                        \
   public:                                                           \
    using Error::Error;                                              \
    const char* kind() const noexcept override { return #Name; }     \
  }

// graphs and compilation
LOGIFOLD_DEFINE_ERROR(DimensionMismatch);
LOGIFOLD_DEFINE_ERROR(MissingArrow);
LOGIFOLD_DEFINE_ERROR(InvalidGraph);
LOGIFOLD_DEFINE_ERROR(RegionBudgetExceeded);
LOGIFOLD_DEFINE_ERROR(NonReLUActivation);
LOGIFOLD_DEFINE_ERROR(InvalidFuzzyOutput);
LOGIFOLD_DEFINE_ERROR(InvalidArgument);

// ensemble
LOGIFOLD_DEFINE_ERROR(UnknownLabel);
LOGIFOLD_DEFINE_ERROR(MissingPrediction);
LOGIFOLD_DEFINE_ERROR(NoChartCovers);
LOGIFOLD_DEFINE_ERROR(UnknownChart);
LOGIFOLD_DEFINE_ERROR(IncompleteCoarseMap);
LOGIFOLD_DEFINE_ERROR(InvalidLadder);

// theory
LOGIFOLD_DEFINE_ERROR(OutOfDomain);
LOGIFOLD_DEFINE_ERROR(KTooSmall);
LOGIFOLD_DEFINE_ERROR(BudgetExceeded);

// io
LOGIFOLD_DEFINE_ERROR(SchemaError);
LOGIFOLD_DEFINE_ERROR(RowSumError);
LOGIFOLD_DEFINE_ERROR(DuplicateInstance);
LOGIFOLD_DEFINE_ERROR(DimensionChainError);
LOGIFOLD_DEFINE_ERROR(UnknownActivation);

#undef LOGIFOLD_DEFINE_ERROR

}  // namespace logifold
