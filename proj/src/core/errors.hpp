// SPDX-License-Identifier: Apache-2.0
//
// stripesim: simulator for daisy-chained sub-THz radio stripes
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <stdexcept>
#include <string>

namespace stripesim {

// Malformed scenario text. line is 1-based, 0 when unknown.
class ParseError : public std::runtime_error
{
  public:
    ParseError(const std::string &what, int line)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line)
    {
    }
    int line() const noexcept { return line_; }

  private:
    int line_;
};

// A scenario invariant does not hold; field() names the offending key.
class ValidationError : public std::runtime_error
{
  public:
    ValidationError(std::string field, const std::string &what)
        : std::runtime_error(field + ": " + what), field_(std::move(field))
    {
    }
    const std::string &field() const noexcept { return field_; }

  private:
    std::string field_;
};

class IoError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

} // namespace stripesim
