#pragma once

#include <filesystem>
#include <string>

namespace sagnac {

/// Write `text` to `path` atomically: the content lands under a temporary
/// name in the same directory and is renamed into place, so a failed run
/// never leaves a partial file. Throws std::runtime_error on I/O failure.
void write_text_atomic(const std::filesystem::path& path, const std::string& text);

/// Read a whole file; throws std::runtime_error when it cannot be opened.
std::string read_text(const std::filesystem::path& path);

}  // namespace sagnac
