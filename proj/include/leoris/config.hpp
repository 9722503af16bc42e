// SPDX-License-Identifier: Apache-2.0
//
// leoris - active-RIS assisted LEO satellite downlink simulator and optimizer
// Copyright (C) 2026 The leoris authors
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

#include "leoris/experiment.hpp"

#include <iosfwd>
#include <stdexcept>
#include <string>

namespace leoris
{

class ConfigError : public std::runtime_error
{
  public:
    enum class Kind
    {
        UnknownKey,
        BadUnit,
        BadValue,
        Divisibility,
        Invalid,
        Io,
    };

    ConfigError(Kind kind, const std::string &key, const std::string &what);
    Kind kind() const { return kind_; }
    const std::string &key() const { return key_; }

  private:
    Kind kind_;
    std::string key_;
};

std::string to_string(ConfigError::Kind kind);

// "key = value [unit]" lines, '#' starts a comment. Keys not given keep the
// values of base. The result is validated.
ExperimentSpec parse_config(std::istream &is, const ExperimentSpec &base = ExperimentSpec{});
ExperimentSpec load_config(const std::string &path, const ExperimentSpec &base = ExperimentSpec{});

} // namespace leoris
