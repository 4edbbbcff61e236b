// Copyright 2026 The trajsafe Authors
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

#ifndef TRAJSAFE__ERRORS_HPP_
#define TRAJSAFE__ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace trajsafe
{

/// Base class of every error raised by the library.
class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Malformed input syntax. `offset()` is a byte offset for scene files and a
/// 1-based line number for record files (see `unit()`).
class ParseError : public Error
{
public:
  enum class Unit { Byte, Line };

  ParseError(const std::string & what, std::size_t offset, Unit unit = Unit::Byte)
  : Error(what), offset_(offset), unit_(unit)
  {
  }

  std::size_t offset() const noexcept { return offset_; }
  Unit unit() const noexcept { return unit_; }

private:
  std::size_t offset_;
  Unit unit_;
};

/// Well-formed input that violates a domain invariant.
class ValidationError : public Error
{
public:
  ValidationError(std::string field, const std::string & detail)
  : Error(field + ": " + detail), field_(std::move(field))
  {
  }

  const std::string & field() const noexcept { return field_; }

private:
  std::string field_;
};

class IoError : public Error
{
public:
  using Error::Error;
};

/// Bad header or truncated payload in the binary batch exchange.
class ProtocolError : public Error
{
public:
  using Error::Error;
};

}  // namespace trajsafe

#endif  // TRAJSAFE__ERRORS_HPP_
