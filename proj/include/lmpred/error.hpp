#pragma once

#include <stdexcept>
#include <string>

namespace lmpred
{
// Exit-code categories used by the command line front end.
enum class ErrorKind
{
    config = 2,
    numerical = 3,
    data = 4,
};

class Error : public std::runtime_error
{
  public:
    Error(ErrorKind kind, std::string const& what)
        : std::runtime_error(what), kind_(kind)
    {
    }
    ErrorKind kind() const { return kind_; }

  private:
    ErrorKind kind_;
};

#define LMPRED_DEFINE_ERROR(NAME, KIND)                   \
    class NAME : public Error                             \
    {                                                     \
      public:                                             \
        explicit NAME(std::string const& what)            \
            : Error(ErrorKind::KIND, #NAME ": " + what)   \
        {                                                 \
        }                                                 \
    }

LMPRED_DEFINE_ERROR(InvalidParameter, config);
LMPRED_DEFINE_ERROR(ConfigError, config);
LMPRED_DEFINE_ERROR(InvalidDriftPair, config);
LMPRED_DEFINE_ERROR(EmbeddingFailure, numerical);
LMPRED_DEFINE_ERROR(NoRoot, numerical);
LMPRED_DEFINE_ERROR(NegativeSampleCov, numerical);
LMPRED_DEFINE_ERROR(DegenerateVariance, numerical);
LMPRED_DEFINE_ERROR(NegativeVariance, numerical);
LMPRED_DEFINE_ERROR(QuadratureFailure, numerical);
LMPRED_DEFINE_ERROR(DurationPoolExhausted, numerical);
LMPRED_DEFINE_ERROR(InsufficientData, data);
LMPRED_DEFINE_ERROR(ZeroCounts, data);
LMPRED_DEFINE_ERROR(DataFormatError, data);

#undef LMPRED_DEFINE_ERROR

inline void require(bool cond, std::string const& what)
{
    if (!cond)
        throw InvalidParameter(what);
}

}  // namespace lmpred
