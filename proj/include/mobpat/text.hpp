#pragma once

#include <string>
#include <string_view>

namespace mobpat {

/// Decodes Windows-1252 bytes to UTF-8. Bytes without a mapping
/// (0x81, 0x8D, 0x8F, 0x90, 0x9D) become U+FFFD.
std::string decode_cp1252(std::string_view bytes);

/// Encodes UTF-8 to Windows-1252. Code points with no single-byte form,
/// and malformed UTF-8, are written as '?'.
std::string encode_cp1252(std::string_view utf8);

std::string_view trim(std::string_view s);

/// ASCII-only case folding; bytes >= 0x80 pass through untouched.
std::string ascii_lower(std::string_view s);

}  // namespace mobpat
