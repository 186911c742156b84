/* Copyright 2026 The skelbench Authors. All Rights Reserved.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *    http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 * ========================================================================= */
// Exception types shared by every module. Each carries a category that the
// CLI maps onto its process exit code.

#ifndef SKELBENCH_ERROR_HPP
#define SKELBENCH_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace skelbench {

enum class ErrorCategory {
    config,   // bad parameters, bad config documents, misaligned tables
    data,     // unreadable or schema-violating input data
    numeric,  // divergence, non-finite results
};

class Error : public std::runtime_error {
public:
    Error(ErrorCategory category, const std::string& what)
        : std::runtime_error(what), category_(category) {}

    ErrorCategory category() const noexcept { return category_; }

private:
    ErrorCategory category_;
};

// Out-of-domain argument to an operation (n < 1, r >= 1, target_len < 2, ...).
struct ParameterError : Error {
    explicit ParameterError(const std::string& what) : Error(ErrorCategory::config, what) {}
};

// Malformed text input. line is 1-based; 0 when not applicable.
struct ParseError : Error {
    ParseError(const std::string& what, std::size_t line)
        : Error(ErrorCategory::data, line ? "line " + std::to_string(line) + ": " + what : what),
          line(line) {}
    std::size_t line;
};

// Well-formed input that violates the expected schema (missing keys, wrong counts).
struct SchemaError : Error {
    explicit SchemaError(const std::string& what) : Error(ErrorCategory::data, what) {}
};

// Input values that violate a data invariant (non-finite coordinates, T < 2, ...).
struct DataError : Error {
    explicit DataError(const std::string& what) : Error(ErrorCategory::data, what) {}
};

// Fitted state (standardizer, model) does not match the data offered to it.
struct ConsistencyError : Error {
    explicit ConsistencyError(const std::string& what) : Error(ErrorCategory::config, what) {}
};

struct NumericError : Error {
    explicit NumericError(const std::string& what) : Error(ErrorCategory::numeric, what) {}
};

// Sequence longer than a fixed-length padding target.
struct LengthError : Error {
    explicit LengthError(const std::string& what) : Error(ErrorCategory::config, what) {}
};

// A sample whose split key appears in neither id list.
struct AssignmentError : Error {
    explicit AssignmentError(const std::string& what) : Error(ErrorCategory::data, what) {}
};

// Training set unusable (fewer than two classes, non-finite features).
struct TrainingError : Error {
    explicit TrainingError(const std::string& what) : Error(ErrorCategory::data, what) {}
};

// Prediction file does not line up with the labelled truth set.
struct IngestionError : Error {
    explicit IngestionError(const std::string& what) : Error(ErrorCategory::data, what) {}
};

// Two results tables do not share the same key set.
struct AlignmentError : Error {
    explicit AlignmentError(const std::string& what) : Error(ErrorCategory::config, what) {}
};

inline int exit_code_for(ErrorCategory category) {
    switch (category) {
        case ErrorCategory::config: return 2;
        case ErrorCategory::data: return 3;
        case ErrorCategory::numeric: return 4;
    }
    return 1;
}

}  // namespace skelbench

#endif  // SKELBENCH_ERROR_HPP
