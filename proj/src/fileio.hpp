#ifndef EAWARD_SRC_FILEIO_HPP
#define EAWARD_SRC_FILEIO_HPP

#include "eaward/crypto.hpp"

#include <filesystem>
#include <string>

namespace eaward::detail {

/// Throws NotFound when the file does not exist.
Bytes read_file(const std::filesystem::path& path);
std::string read_text_file(const std::filesystem::path& path);
/// Write to a sibling temporary, then rename over `path`.
void write_file_atomic(const std::filesystem::path& path, ByteView data);

} // namespace eaward::detail

#endif
