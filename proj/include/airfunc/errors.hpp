/*
   Copyright 2026 the airfunc authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/
#pragma once

#include <stdexcept>
#include <string>

namespace airfunc {

struct InvalidArgument : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A distribution without the closed form / evaluator required by the
// requested operation.
struct UnsupportedDistribution : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Inner functions are all constant; the pre-processing map is undefined.
struct DegenerateFunction : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// An input component fell outside its declared domain.
struct DomainViolation : std::domain_error {
  DomainViolation(int component, double value, const std::string& what)
      : std::domain_error(what), component(component), value(value) {}
  int component;
  double value;
};

// A transmit symbol exceeded the peak power constraint.
struct PeakPowerViolation : std::domain_error {
  PeakPowerViolation(int k, int m, double power, const std::string& what)
      : std::domain_error(what), k(k), m(m), power(power) {}
  int k;
  int m;
  double power;
};

struct InvalidSpec : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Configuration file problems; carries the offending field path.
struct ConfigError : std::runtime_error {
  ConfigError(const std::string& field, const std::string& what)
      : std::runtime_error(what), field(field) {}
  std::string field;
};

}  // namespace airfunc
