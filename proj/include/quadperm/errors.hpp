#ifndef QUADPERM_ERRORS_HPP
#define QUADPERM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace quadperm {

struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define QUADPERM_DEFINE_ERROR(Name)                         \
  struct Name : Error {                                     \
    explicit Name(const std::string& what = #Name)          \
        : Error(what) {}                                    \
  }

QUADPERM_DEFINE_ERROR(InversionOfZero);
QUADPERM_DEFINE_ERROR(NotIrreducible);
QUADPERM_DEFINE_ERROR(BadTowerConstant);
QUADPERM_DEFINE_ERROR(NotInMu);
QUADPERM_DEFINE_ERROR(FieldTooLarge);
QUADPERM_DEFINE_ERROR(DivisionByZero);
QUADPERM_DEFINE_ERROR(Theta2Zero);
QUADPERM_DEFINE_ERROR(DegreeOverflow);
QUADPERM_DEFINE_ERROR(ParameterInconsistency);
QUADPERM_DEFINE_ERROR(NoRationalRoot);
QUADPERM_DEFINE_ERROR(UnsupportedRegime);
QUADPERM_DEFINE_ERROR(NonTerminatingRule);
QUADPERM_DEFINE_ERROR(BothConstantInVar);
QUADPERM_DEFINE_ERROR(DivisorZero);
QUADPERM_DEFINE_ERROR(ExponentOverflow);
QUADPERM_DEFINE_ERROR(UndefinedName);
QUADPERM_DEFINE_ERROR(UnknownScript);
QUADPERM_DEFINE_ERROR(ParseError);

#undef QUADPERM_DEFINE_ERROR

}  // namespace quadperm

#endif
