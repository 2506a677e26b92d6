#pragma once

#include <stdexcept>
#include <string>

namespace latsurg {

// Base of every error thrown by the toolkit. `stage()` names the module that
// raised it so the driver can report "<stage>: <message>".
class Error : public std::runtime_error {
 public:
  Error(std::string stage, const std::string& what)
      : std::runtime_error(what), stage_(std::move(stage)) {}
  const std::string& stage() const noexcept { return stage_; }

 private:
  std::string stage_;
};

#define LATSURG_DEFINE_ERROR(Name, Stage)                               \
  class Name : public Error {                                           \
   public:                                                              \
    explicit Name(const std::string& what) : Error(Stage, what) {}      \
    Name(std::string stage, const std::string& what)                    \
        : Error(std::move(stage), what) {}                              \
  }

LATSURG_DEFINE_ERROR(DimensionError, "pauli");
LATSURG_DEFINE_ERROR(ContractViolation, "contract");
LATSURG_DEFINE_ERROR(ParseError, "parse");
LATSURG_DEFINE_ERROR(UnsupportedGateError, "transpiler");
LATSURG_DEFINE_ERROR(EmptyDagError, "pdag");
LATSURG_DEFINE_ERROR(IllegalOpError, "board");
LATSURG_DEFINE_ERROR(NoPathError, "board");
LATSURG_DEFINE_ERROR(InfeasibleBoardError, "layout-search");
LATSURG_DEFINE_ERROR(CapacityError, "mapping");
LATSURG_DEFINE_ERROR(DeadlockError, "scheduler");
LATSURG_DEFINE_ERROR(ValidationError, "scheduler");
LATSURG_DEFINE_ERROR(CalibrationError, "ler-model");
LATSURG_DEFINE_ERROR(SizeError, "oracle");
LATSURG_DEFINE_ERROR(BudgetExceededError, "oracle");
LATSURG_DEFINE_ERROR(ConfigError, "cli");

#undef LATSURG_DEFINE_ERROR

}  // namespace latsurg
