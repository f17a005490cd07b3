#pragma once

#include <compare>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace esgkg::util {

// SHA-256 hex digest of the given bytes (lowercase hex, 64 chars).
std::string sha256_hex(std::string_view data);

std::string read_file(const std::filesystem::path& path);
bool file_exists(const std::filesystem::path& path);

// Writes to a sibling temp file and renames into place, so readers never
// observe a partial artifact. Creates parent directories as needed.
void atomic_write_file(const std::filesystem::path& path, std::string_view content);

std::string to_lower_ascii(std::string_view s);
std::string trim(std::string_view s);
std::string collapse_whitespace(std::string_view s);
std::vector<std::string> split(std::string_view s, char sep);
std::vector<std::string> split_lines(std::string_view s);
bool starts_with(std::string_view s, std::string_view prefix);

// Lowercase, whitespace runs to '-', everything outside [a-z0-9._~-] percent-free
// folded to '-'; used for minting IRI path segments from free text ids.
std::string slugify(std::string_view s);

// Calendar date, total-ordered. Accepts "YYYY-MM-DD" and ISO timestamps with
// that prefix ("YYYY-MM-DDThh:mm:ssZ").
struct Date {
  int year = 0;
  int month = 0;
  int day = 0;

  auto operator<=>(const Date&) const = default;

  std::string iso() const;
  static Date parse(std::string_view text);          // throws Error(Parse)
  static bool try_parse(std::string_view text, Date& out);
};

}  // namespace esgkg::util
