#pragma once
#include <string>

#include "ptrng/bitstream.hpp"

namespace ptrng {

/// On-disk encodings of a bit stream. raw is the packed payload with no
/// header; ascii01 is one character per bit with a newline every 64 bits,
/// convenient for test-vector diffing.
enum class OutputFormat { raw, hex, base64, ascii01 };

/// Parses one of "raw", "hex", "base64", "ascii01".
[[nodiscard]] OutputFormat parse_format(const std::string& name);
[[nodiscard]] std::string format_name(OutputFormat format);

/// Encode to the byte content of a bit file.
[[nodiscard]] std::string encode_bits(const BitStream& bits, OutputFormat format);

/// Inverse of encode_bits. hex accepts both cases; ascii01 ignores
/// whitespace. Malformed input throws std::invalid_argument.
[[nodiscard]] BitStream decode_bits(const std::string& data, OutputFormat format);

}  // namespace ptrng
