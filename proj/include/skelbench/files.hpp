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
// Whole-file read/write helpers.

#ifndef SKELBENCH_FILES_HPP
#define SKELBENCH_FILES_HPP

#include <filesystem>
#include <string>
#include <string_view>

namespace skelbench {

/// Reads a file in binary mode. Throws DataError if it cannot be opened.
std::string read_file(const std::filesystem::path& path);

/// Writes bytes, creating parent directories. Throws DataError on failure.
void write_file(const std::filesystem::path& path, std::string_view bytes);

}  // namespace skelbench

#endif  // SKELBENCH_FILES_HPP
