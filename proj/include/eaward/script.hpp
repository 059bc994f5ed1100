#ifndef EAWARD_SCRIPT_HPP
#define EAWARD_SCRIPT_HPP

#include "eaward/address.hpp"
#include "eaward/crypto.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace eaward {

namespace op {
inline constexpr std::uint8_t zero = 0x00;
inline constexpr std::uint8_t pushdata1 = 0x4c;
inline constexpr std::uint8_t pushdata2 = 0x4d;
inline constexpr std::uint8_t pushdata4 = 0x4e;
inline constexpr std::uint8_t one_negate = 0x4f;
inline constexpr std::uint8_t one = 0x51;
inline constexpr std::uint8_t sixteen = 0x60;
inline constexpr std::uint8_t op_return = 0x6a;
inline constexpr std::uint8_t dup = 0x76;
inline constexpr std::uint8_t equal = 0x87;
inline constexpr std::uint8_t equalverify = 0x88;
inline constexpr std::uint8_t hash160 = 0xa9;
inline constexpr std::uint8_t checksig = 0xac;
inline constexpr std::uint8_t checkmultisig = 0xae;
} // namespace op

/// One parsed script element. `data` is only meaningful for push opcodes
/// (0x00..0x4e).
struct ScriptOp {
    std::uint8_t opcode = 0;
    Bytes data;

    [[nodiscard]] bool is_push() const noexcept { return opcode <= op::pushdata4; }
    /// -1, 0..16 for OP_1NEGATE, OP_0 and OP_1..OP_16; nullopt otherwise.
    [[nodiscard]] std::optional<int> small_int() const noexcept;

    bool operator==(const ScriptOp&) const = default;
};

class Script {
public:
    Script() = default;
    explicit Script(Bytes bytes) : bytes_(std::move(bytes)) {}
    static Script from_hex(std::string_view hex) { return Script(eaward::from_hex(hex)); }

    [[nodiscard]] const Bytes& bytes() const noexcept { return bytes_; }
    [[nodiscard]] std::string hex() const { return to_hex(bytes_); }
    [[nodiscard]] bool empty() const noexcept { return bytes_.empty(); }
    [[nodiscard]] std::size_t size() const noexcept { return bytes_.size(); }

    /// Throws MalformedScript on a push that runs past the end.
    [[nodiscard]] std::vector<ScriptOp> ops() const;
    [[nodiscard]] bool is_push_only() const;

    /// Appends a push using the smallest PUSHDATA form for the size (never
    /// substitutes OP_1..OP_16 for one-byte data).
    Script& push_data(ByteView data);
    Script& push_opcode(std::uint8_t opcode);

    bool operator==(const Script&) const = default;

private:
    Bytes bytes_;
};

std::string_view opcode_name(std::uint8_t opcode) noexcept;

/// Space-separated tokens: small integers as decimal, data pushes as hex,
/// other opcodes as OP_* names.
std::string script_to_asm(const Script& script);
/// Inverse of script_to_asm for minimally pushed scripts. Throws MalformedScript.
Script script_from_asm(std::string_view asm_text);

enum class ScriptKind { p2pkh, p2sh, multisig, nulldata, nonstandard };

/// Bitcoin Core names ("pubkeyhash", "scripthash", ...).
std::string_view to_string(ScriptKind kind) noexcept;

struct DecodedScript {
    ScriptKind kind = ScriptKind::nonstandard;
    std::optional<int> req_sigs;
    std::optional<std::vector<Address>> addresses;
    std::vector<PublicKey> pubkeys; ///< multisig only, script order
    std::optional<Bytes> payload;   ///< nulldata only
};

/// Throws MalformedScript for a truncated push.
DecodedScript decode_script(const Script& script, Network net);
inline DecodedScript decode_script(std::string_view hex, Network net)
{
    return decode_script(Script::from_hex(hex), net);
}

/// Concatenated push payload when `script` is OP_RETURN followed by pushes only.
std::optional<Bytes> nulldata_payload(const Script& script);
Script make_nulldata_script(ByteView payload);
Script make_p2pkh_script(const Digest160& key_hash);
Script make_p2sh_script(const Digest160& script_hash);

} // namespace eaward

#endif
