#include "ptrng/formats.hpp"

#include <array>
#include <cctype>
#include <stdexcept>

namespace ptrng {

namespace {

constexpr char kHexDigits[] = "0123456789abcdef";
constexpr char kBase64Alphabet[] =
    "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";

int hex_value(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    throw std::invalid_argument("decode_bits: invalid hex digit");
}

int base64_value(char c) {
    if (c >= 'A' && c <= 'Z') return c - 'A';
    if (c >= 'a' && c <= 'z') return c - 'a' + 26;
    if (c >= '0' && c <= '9') return c - '0' + 52;
    if (c == '+') return 62;
    if (c == '/') return 63;
    throw std::invalid_argument("decode_bits: invalid base64 character");
}

std::string encode_base64(const std::vector<std::uint8_t>& bytes) {
    std::string out;
    out.reserve((bytes.size() + 2) / 3 * 4);
    std::size_t i = 0;
    for (; i + 3 <= bytes.size(); i += 3) {
        const std::uint32_t triple = (static_cast<std::uint32_t>(bytes[i]) << 16) |
                                     (static_cast<std::uint32_t>(bytes[i + 1]) << 8) |
                                     bytes[i + 2];
        out.push_back(kBase64Alphabet[(triple >> 18) & 0x3F]);
        out.push_back(kBase64Alphabet[(triple >> 12) & 0x3F]);
        out.push_back(kBase64Alphabet[(triple >> 6) & 0x3F]);
        out.push_back(kBase64Alphabet[triple & 0x3F]);
    }
    const std::size_t rest = bytes.size() - i;
    if (rest == 1) {
        const std::uint32_t triple = static_cast<std::uint32_t>(bytes[i]) << 16;
        out.push_back(kBase64Alphabet[(triple >> 18) & 0x3F]);
        out.push_back(kBase64Alphabet[(triple >> 12) & 0x3F]);
        out.append("==");
    } else if (rest == 2) {
        const std::uint32_t triple = (static_cast<std::uint32_t>(bytes[i]) << 16) |
                                     (static_cast<std::uint32_t>(bytes[i + 1]) << 8);
        out.push_back(kBase64Alphabet[(triple >> 18) & 0x3F]);
        out.push_back(kBase64Alphabet[(triple >> 12) & 0x3F]);
        out.push_back(kBase64Alphabet[(triple >> 6) & 0x3F]);
        out.push_back('=');
    }
    return out;
}

std::vector<std::uint8_t> decode_base64(const std::string& data) {
    std::vector<std::uint8_t> bytes;
    bytes.reserve(data.size() / 4 * 3);
    std::array<int, 4> quad{};
    std::size_t filled = 0;
    std::size_t padding = 0;
    for (const char c : data) {
        if (c == '\n' || c == '\r') continue;
        if (c == '=') {
            ++padding;
            quad[filled++] = 0;
        } else {
            if (padding > 0)
                throw std::invalid_argument("decode_bits: base64 data after padding");
            quad[filled++] = base64_value(c);
        }
        if (filled == 4) {
            const std::uint32_t triple =
                (static_cast<std::uint32_t>(quad[0]) << 18) |
                (static_cast<std::uint32_t>(quad[1]) << 12) |
                (static_cast<std::uint32_t>(quad[2]) << 6) | static_cast<std::uint32_t>(quad[3]);
            bytes.push_back(static_cast<std::uint8_t>(triple >> 16));
            if (padding < 2) bytes.push_back(static_cast<std::uint8_t>(triple >> 8));
            if (padding < 1) bytes.push_back(static_cast<std::uint8_t>(triple));
            filled = 0;
        }
    }
    if (filled != 0 || padding > 2)
        throw std::invalid_argument("decode_bits: truncated base64 input");
    return bytes;
}

}  // namespace

OutputFormat parse_format(const std::string& name) {
    if (name == "raw") return OutputFormat::raw;
    if (name == "hex") return OutputFormat::hex;
    if (name == "base64") return OutputFormat::base64;
    if (name == "ascii01") return OutputFormat::ascii01;
    throw std::invalid_argument("unknown format: " + name);
}

std::string format_name(OutputFormat format) {
    switch (format) {
        case OutputFormat::raw: return "raw";
        case OutputFormat::hex: return "hex";
        case OutputFormat::base64: return "base64";
        case OutputFormat::ascii01: return "ascii01";
    }
    throw std::invalid_argument("unknown format enumerator");
}

std::string encode_bits(const BitStream& bits, OutputFormat format) {
    switch (format) {
        case OutputFormat::raw:
            return {bits.bytes().begin(), bits.bytes().end()};
        case OutputFormat::hex: {
            std::string out;
            out.reserve(bits.bytes().size() * 2);
            for (const std::uint8_t byte : bits.bytes()) {
                out.push_back(kHexDigits[byte >> 4]);
                out.push_back(kHexDigits[byte & 0x0F]);
            }
            return out;
        }
        case OutputFormat::base64:
            return encode_base64(bits.bytes());
        case OutputFormat::ascii01: {
            std::string out;
            out.reserve(bits.bit_length() + bits.bit_length() / 64 + 1);
            for (std::size_t i = 0; i < bits.bit_length(); ++i) {
                out.push_back(bits.bit(i) ? '1' : '0');
                if ((i + 1) % 64 == 0) out.push_back('\n');
            }
            if (bits.bit_length() % 64 != 0) out.push_back('\n');
            return out;
        }
    }
    throw std::invalid_argument("unknown format enumerator");
}

BitStream decode_bits(const std::string& data, OutputFormat format) {
    switch (format) {
        case OutputFormat::raw: {
            std::vector<std::uint8_t> bytes{data.begin(), data.end()};
            const std::size_t n_bits = bytes.size() * 8;
            return BitStream::from_bytes(std::move(bytes), n_bits);
        }
        case OutputFormat::hex: {
            std::string compact;
            compact.reserve(data.size());
            for (const char c : data) {
                if (c == '\n' || c == '\r') continue;
                compact.push_back(c);
            }
            if (compact.size() % 2 != 0)
                throw std::invalid_argument("decode_bits: odd hex digit count");
            std::vector<std::uint8_t> bytes;
            bytes.reserve(compact.size() / 2);
            for (std::size_t i = 0; i < compact.size(); i += 2)
                bytes.push_back(static_cast<std::uint8_t>(hex_value(compact[i]) << 4 |
                                                          hex_value(compact[i + 1])));
            const std::size_t n_bits = bytes.size() * 8;
            return BitStream::from_bytes(std::move(bytes), n_bits);
        }
        case OutputFormat::base64: {
            std::vector<std::uint8_t> bytes = decode_base64(data);
            const std::size_t n_bits = bytes.size() * 8;
            return BitStream::from_bytes(std::move(bytes), n_bits);
        }
        case OutputFormat::ascii01: {
            BitStream out;
            for (const char c : data) {
                if (c == '0' || c == '1') {
                    out.append_bit(c == '1');
                } else if (!std::isspace(static_cast<unsigned char>(c))) {
                    throw std::invalid_argument("decode_bits: invalid ascii01 character");
                }
            }
            return out;
        }
    }
    throw std::invalid_argument("unknown format enumerator");
}

}  // namespace ptrng
