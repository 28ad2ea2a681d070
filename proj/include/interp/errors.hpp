/*
   Copyright 2026 the interp-lab authors

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

#ifndef INTERP_ERRORS_HPP
#define INTERP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace interp {

/// Bad arguments: dimension mismatches, out-of-range parameters.
class input_error : public std::invalid_argument {
   public:
    explicit input_error(const std::string& what) : std::invalid_argument(what) {}
};

/// A requested exact computation would exceed a hard enumeration cap.
class capacity_error : public std::runtime_error {
   public:
    explicit capacity_error(const std::string& what) : std::runtime_error(what) {}
};

/// A documented precondition does not hold for the given data.
class precondition_error : public std::invalid_argument {
   public:
    precondition_error(const std::string& what, double residual)
        : std::invalid_argument(what), residual_(residual) {}
    double residual() const noexcept { return residual_; }

   private:
    double residual_;
};

/// Numerical failure (non-convergence, unstable recursion, ...).
class numerical_error : public std::runtime_error {
   public:
    explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed experiment configuration; message lists the offending keys.
class config_error : public std::runtime_error {
   public:
    explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace interp

#endif  // INTERP_ERRORS_HPP
