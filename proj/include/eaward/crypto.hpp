#ifndef EAWARD_CRYPTO_HPP
#define EAWARD_CRYPTO_HPP

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace eaward {

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;

inline ByteView as_bytes(std::string_view s) noexcept
{
    return {reinterpret_cast<const std::uint8_t*>(s.data()), s.size()};
}

/// Lowercase hex of arbitrary bytes.
std::string to_hex(ByteView data);
/// Case-insensitive; throws MalformedHex on odd length or a non-hex digit.
Bytes from_hex(std::string_view hex);

template <std::size_t N>
struct FixedBytes {
    std::array<std::uint8_t, N> bytes{};

    static constexpr std::size_t size() noexcept { return N; }
    [[nodiscard]] ByteView view() const noexcept { return bytes; }
    [[nodiscard]] std::string hex() const { return to_hex(bytes); }

    auto operator<=>(const FixedBytes&) const = default;
};

struct Digest256 : FixedBytes<32> {
    /// Throws WrongLength unless `data` is exactly 32 bytes.
    static Digest256 from_bytes(ByteView data);
    static Digest256 from_hex(std::string_view hex);
};

struct Digest160 : FixedBytes<20> {
    static Digest160 from_bytes(ByteView data);
};

Digest256 sha256(ByteView data);
inline Digest256 sha256(std::string_view s) { return sha256(as_bytes(s)); }
/// SHA-256 applied twice.
Digest256 hash256(ByteView data);
/// RIPEMD-160 of SHA-256.
Digest160 hash160(ByteView data);

std::string base58_encode(ByteView data);
Bytes base58_decode(std::string_view text);

/// version || payload || first four bytes of hash256(version || payload).
std::string base58check_encode(std::uint8_t version, const Digest160& payload);
std::pair<std::uint8_t, Digest160> base58check_decode(std::string_view text);

// Variable-length variants, used for WIF private keys.
std::string base58check_encode_raw(ByteView data);
Bytes base58check_decode_raw(std::string_view text);

/// Standard alphabet with padding.
std::string base64_encode(ByteView data);
Bytes base64_decode(std::string_view text);

/// SEC1-encoded secp256k1 point: 33 bytes compressed or 65 bytes uncompressed.
class PublicKey {
public:
    static constexpr std::size_t compressed_size = 33;
    static constexpr std::size_t uncompressed_size = 65;

    /// Throws InvalidKey unless `data` encodes a point on the curve.
    static PublicKey from_bytes(ByteView data);
    static PublicKey from_hex(std::string_view hex) { return from_bytes(eaward::from_hex(hex)); }

    [[nodiscard]] bool compressed() const noexcept { return bytes_.size() == compressed_size; }
    [[nodiscard]] ByteView bytes() const noexcept { return bytes_; }
    [[nodiscard]] std::string hex() const { return to_hex(bytes_); }
    [[nodiscard]] PublicKey to_compressed() const;

    bool operator==(const PublicKey&) const = default;

private:
    explicit PublicKey(Bytes b) : bytes_(std::move(b)) {}
    Bytes bytes_;
};

class PrivateKey {
public:
    /// Throws InvalidKey unless 0 < scalar < n.
    static PrivateKey from_bytes(ByteView scalar, bool compressed = true);
    /// Wallet import format; also reports the version byte found.
    static PrivateKey from_wif(std::string_view wif, std::uint8_t* version_out = nullptr);

    PrivateKey(const PrivateKey&) = default;
    PrivateKey& operator=(const PrivateKey&) = default;
    ~PrivateKey();

    [[nodiscard]] bool compressed() const noexcept { return compressed_; }
    [[nodiscard]] ByteView scalar() const noexcept { return scalar_; }
    [[nodiscard]] PublicKey public_key() const;
    [[nodiscard]] std::string to_wif(std::uint8_t version) const;

private:
    PrivateKey(const std::array<std::uint8_t, 32>& s, bool compressed) : scalar_(s), compressed_(compressed) {}
    std::array<std::uint8_t, 32> scalar_{};
    bool compressed_ = true;
};

/// Compact 65-byte signature: header || r || s. Header is 27 + recid, plus 4
/// when the signer's public key is compressed.
struct RecoverableSig {
    std::uint8_t header = 0;
    std::array<std::uint8_t, 32> r{};
    std::array<std::uint8_t, 32> s{};

    static constexpr std::size_t size = 65;

    /// Throws MalformedSignature unless exactly 65 bytes.
    static RecoverableSig parse(ByteView data);
    [[nodiscard]] Bytes serialize() const;

    [[nodiscard]] int recovery_id() const noexcept { return (header - 27) & 3; }
    [[nodiscard]] bool compressed() const noexcept { return header >= 31; }

    bool operator==(const RecoverableSig&) const = default;
};

/// Deterministic (RFC 6979, HMAC-SHA256) nonce, low-s normalised.
RecoverableSig sign_recoverable(const PrivateKey& key, const Digest256& digest);

/// Throws RecoveryFailed for an out-of-range header, r or s, or when no
/// curve point exists for the encoded x coordinate.
PublicKey recover_public_key(const RecoverableSig& sig, const Digest256& digest);

} // namespace eaward

#endif
