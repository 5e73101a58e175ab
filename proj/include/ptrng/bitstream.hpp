#pragma once
#include <cstddef>
#include <cstdint>
#include <vector>

namespace ptrng {

/// Packed random bits, most-significant-bit-first within each byte.
/// Trailing pad bits in the final byte are always zero.
class BitStream {
public:
    BitStream() = default;

    void append_bit(bool bit) {
        const std::size_t offset = bit_length_ & 7u;
        if (offset == 0) payload_.push_back(0);
        if (bit) payload_.back() |= static_cast<std::uint8_t>(0x80u >> offset);
        ++bit_length_;
    }

    /// Unchecked read of bit `index` (MSB-first).
    [[nodiscard]] bool bit(std::size_t index) const {
        return (payload_[index >> 3] >> (7u - (index & 7u))) & 1u;
    }

    [[nodiscard]] std::size_t bit_length() const noexcept { return bit_length_; }
    [[nodiscard]] bool empty() const noexcept { return bit_length_ == 0; }
    [[nodiscard]] const std::vector<std::uint8_t>& bytes() const noexcept { return payload_; }

    [[nodiscard]] std::uint64_t count_ones() const noexcept;

    /// Copy of bits [first_bit, first_bit + n_bits); byte-aligned slices are
    /// copied bytewise.
    [[nodiscard]] BitStream slice(std::size_t first_bit, std::size_t n_bits) const;

    /// Drop every bit at index >= n_bits and re-zero the freed pad bits.
    void truncate(std::size_t n_bits);

    void reserve_bits(std::size_t n_bits) { payload_.reserve((n_bits + 7) / 8); }

    /// Append all bits of `other` after the current contents.
    void append(const BitStream& other);

    /// Adopt packed bytes. Content beyond bit_length (pad bits and surplus
    /// bytes) is cleared so the zero-pad invariant holds.
    [[nodiscard]] static BitStream from_bytes(std::vector<std::uint8_t> bytes,
                                              std::size_t bit_length);

    friend bool operator==(const BitStream&, const BitStream&) = default;

private:
    std::vector<std::uint8_t> payload_;
    std::size_t bit_length_ = 0;
};

/// Pack a 0/1 sequence MSB-first; bit_length equals the input length.
[[nodiscard]] BitStream pack_bits(const std::vector<std::uint8_t>& bits);

/// Inverse of pack_bits: the bit sequence as one 0/1 byte per bit.
[[nodiscard]] std::vector<std::uint8_t> unpack_bits(const BitStream& stream);

}  // namespace ptrng
