#ifndef VOYTOP_IO_HPP
#define VOYTOP_IO_HPP

#include <cstdint>
#include <filesystem>
#include <string>

namespace voytop::io {

// Locale-independent decimal formatting, 12 significant digits.
// Shared by every CSV/JSON export so outputs are byte-deterministic.
std::string format_real(double v);

// Quotes a CSV field if it contains a comma, quote, or newline.
std::string csv_field(const std::string& s);

std::string read_file(const std::filesystem::path& path);

// Write-temp-then-rename so a failed run never leaves a partial file.
void atomic_write(const std::filesystem::path& path, const std::string& content);

std::uint64_t file_checksum(const std::filesystem::path& path);

}  // namespace voytop::io

#endif  // VOYTOP_IO_HPP
