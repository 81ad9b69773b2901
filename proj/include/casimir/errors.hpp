#pragma once

#include <stdexcept>
#include <string>

namespace casimir
{
//---------------------------------------------------------------------------//
/*!
 * Base class for all errors raised by the library.
 *
 * The CLI maps NumericalError to exit status 1 and every other subclass to
 * exit status 2 (bad input).
 */
class Error : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

//! Argument outside the mathematical domain of an operation
class DomainError : public Error
{
  public:
    using Error::Error;
};

//! Malformed input file or table
class FormatError : public Error
{
  public:
    using Error::Error;
};

//! A permittivity model evaluated outside the range where it is physical
class ModelValidityError : public Error
{
  public:
    using Error::Error;
};

//! Argument outside a tabulated or physical regime
class RangeError : public Error
{
  public:
    using Error::Error;
};

//! Roughness averaging produced a non-positive separation
class ContactError : public Error
{
  public:
    using Error::Error;
};

//! Quadrature or series failed to converge; carries the partial result
class NumericalError : public Error
{
  public:
    NumericalError(std::string const& what, double estimate, double bound)
        : Error(what), estimate_(estimate), bound_(bound)
    {
    }

    double estimate() const noexcept { return estimate_; }
    double error_bound() const noexcept { return bound_; }

  private:
    double estimate_;
    double bound_;
};

}  // namespace casimir
