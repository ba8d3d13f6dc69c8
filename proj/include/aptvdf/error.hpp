/*
 * Copyright 2026 The aptvdf Authors
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#ifndef APTVDF_ERROR_HPP
#define APTVDF_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace aptvdf {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// A caller supplied an argument outside the documented domain.
class PreconditionError : public Error {
public:
  using Error::Error;
};

// The result of a computation left its valid domain.
class DomainError : public Error {
public:
  using Error::Error;
};

// Filter design did not converge or exceeded the order cap.
class DesignError : public Error {
public:
  using Error::Error;
};

// A filter cannot be built in the requested mode.
class StructuralError : public Error {
public:
  using Error::Error;
};

// Word-length search did not reach its target.
class SearchError : public Error {
public:
  SearchError(const std::string &what, double best_rmse_db)
      : Error(what), best_rmse_db_(best_rmse_db) {}
  double best_rmse_db() const noexcept { return best_rmse_db_; }

private:
  double best_rmse_db_;
};

// Text input could not be parsed. line() is 1-based, 0 when not line related.
class ParseError : public Error {
public:
  ParseError(const std::string &what, std::size_t line)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

// A sample sequence contained NaN or infinity.
class NonFiniteInputError : public PreconditionError {
public:
  explicit NonFiniteInputError(std::size_t index)
      : PreconditionError("non-finite input sample at index " +
                          std::to_string(index)),
        index_(index) {}
  std::size_t index() const noexcept { return index_; }

private:
  std::size_t index_;
};

class IoError : public Error {
public:
  using Error::Error;
};

} // namespace aptvdf

#endif // APTVDF_ERROR_HPP
