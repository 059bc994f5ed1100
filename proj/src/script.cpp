#include "eaward/script.hpp"

#include "eaward/error.hpp"
#include "eaward/escrow.hpp"

#include <array>
#include <sstream>

namespace eaward {

namespace {

constexpr std::array<std::string_view, 256> build_names()
{
    std::array<std::string_view, 256> n{};
    for (auto& s : n)
        s = "OP_UNKNOWN";
    n[0x00] = "0";
    n[0x4c] = "OP_PUSHDATA1";
    n[0x4d] = "OP_PUSHDATA2";
    n[0x4e] = "OP_PUSHDATA4";
    n[0x4f] = "-1";
    n[0x50] = "OP_RESERVED";
    constexpr std::string_view digits[] = {"1", "2", "3", "4", "5", "6", "7", "8", "9", "10", "11", "12", "13", "14", "15", "16"};
    for (int i = 0; i < 16; ++i)
        n[0x51 + i] = digits[i];
    constexpr std::string_view flow[] = {"OP_NOP", "OP_VER", "OP_IF", "OP_NOTIF", "OP_VERIF", "OP_VERNOTIF", "OP_ELSE",
        "OP_ENDIF", "OP_VERIFY", "OP_RETURN", "OP_TOALTSTACK", "OP_FROMALTSTACK", "OP_2DROP", "OP_2DUP", "OP_3DUP",
        "OP_2OVER", "OP_2ROT", "OP_2SWAP", "OP_IFDUP", "OP_DEPTH", "OP_DROP", "OP_DUP", "OP_NIP", "OP_OVER", "OP_PICK",
        "OP_ROLL", "OP_ROT", "OP_SWAP", "OP_TUCK", "OP_CAT", "OP_SUBSTR", "OP_LEFT", "OP_RIGHT", "OP_SIZE", "OP_INVERT",
        "OP_AND", "OP_OR", "OP_XOR", "OP_EQUAL", "OP_EQUALVERIFY", "OP_RESERVED1", "OP_RESERVED2", "OP_1ADD", "OP_1SUB",
        "OP_2MUL", "OP_2DIV", "OP_NEGATE", "OP_ABS", "OP_NOT", "OP_0NOTEQUAL", "OP_ADD", "OP_SUB", "OP_MUL", "OP_DIV",
        "OP_MOD", "OP_LSHIFT", "OP_RSHIFT", "OP_BOOLAND", "OP_BOOLOR", "OP_NUMEQUAL", "OP_NUMEQUALVERIFY",
        "OP_NUMNOTEQUAL", "OP_LESSTHAN", "OP_GREATERTHAN", "OP_LESSTHANOREQUAL", "OP_GREATERTHANOREQUAL", "OP_MIN",
        "OP_MAX", "OP_WITHIN", "OP_RIPEMD160", "OP_SHA1", "OP_SHA256", "OP_HASH160", "OP_HASH256", "OP_CODESEPARATOR",
        "OP_CHECKSIG", "OP_CHECKSIGVERIFY", "OP_CHECKMULTISIG", "OP_CHECKMULTISIGVERIFY", "OP_NOP1",
        "OP_CHECKLOCKTIMEVERIFY", "OP_CHECKSEQUENCEVERIFY", "OP_NOP4", "OP_NOP5", "OP_NOP6", "OP_NOP7", "OP_NOP8",
        "OP_NOP9", "OP_NOP10", "OP_CHECKSIGADD"};
    for (std::size_t i = 0; i < std::size(flow); ++i)
        n[0x61 + i] = flow[i];
    return n;
}

constexpr auto opcode_names = build_names();

bool is_small_int_token(std::string_view token)
{
    if (token == "-1")
        return true;
    if (token.empty() || token.size() > 2)
        return false;
    for (char c : token)
        if (c < '0' || c > '9')
            return false;
    int v = std::stoi(std::string(token));
    return v >= 0 && v <= 16 && std::to_string(v) == token;
}

} // namespace

std::optional<int> ScriptOp::small_int() const noexcept
{
    if (opcode == op::zero)
        return 0;
    if (opcode == op::one_negate)
        return -1;
    if (opcode >= op::one && opcode <= op::sixteen)
        return opcode - op::one + 1;
    return std::nullopt;
}

std::string_view opcode_name(std::uint8_t opcode) noexcept
{
    return opcode_names[opcode];
}

std::vector<ScriptOp> Script::ops() const
{
    std::vector<ScriptOp> out;
    std::size_t pos = 0;
    auto need = [&](std::size_t n, const char* what) {
        if (bytes_.size() - pos < n)
            throw Error(ErrorCode::MalformedScript, std::string(what) + " runs past the end of the script at offset " + std::to_string(pos));
    };
    while (pos < bytes_.size()) {
        ScriptOp o;
        o.opcode = bytes_[pos++];
        std::size_t len = 0;
        if (o.opcode > op::zero && o.opcode < op::pushdata1) {
            len = o.opcode;
        } else if (o.opcode == op::pushdata1) {
            need(1, "PUSHDATA1 length");
            len = bytes_[pos];
            pos += 1;
        } else if (o.opcode == op::pushdata2) {
            need(2, "PUSHDATA2 length");
            len = bytes_[pos] | (std::size_t{bytes_[pos + 1]} << 8);
            pos += 2;
        } else if (o.opcode == op::pushdata4) {
            need(4, "PUSHDATA4 length");
            len = bytes_[pos] | (std::size_t{bytes_[pos + 1]} << 8) | (std::size_t{bytes_[pos + 2]} << 16)
                | (std::size_t{bytes_[pos + 3]} << 24);
            pos += 4;
        }
        if (len > 0) {
            need(len, "push data");
            o.data.assign(bytes_.begin() + static_cast<std::ptrdiff_t>(pos), bytes_.begin() + static_cast<std::ptrdiff_t>(pos + len));
            pos += len;
        }
        out.push_back(std::move(o));
    }
    return out;
}

bool Script::is_push_only() const
{
    for (const auto& o : ops())
        if (o.opcode > op::sixteen)
            return false;
    return true;
}

Script& Script::push_data(ByteView data)
{
    auto n = data.size();
    if (n == 0) {
        bytes_.push_back(op::zero);
        return *this;
    }
    if (n < op::pushdata1) {
        bytes_.push_back(static_cast<std::uint8_t>(n));
    } else if (n <= 0xff) {
        bytes_.push_back(op::pushdata1);
        bytes_.push_back(static_cast<std::uint8_t>(n));
    } else if (n <= 0xffff) {
        bytes_.push_back(op::pushdata2);
        bytes_.push_back(static_cast<std::uint8_t>(n & 0xff));
        bytes_.push_back(static_cast<std::uint8_t>(n >> 8));
    } else {
        bytes_.push_back(op::pushdata4);
        for (int shift = 0; shift < 32; shift += 8)
            bytes_.push_back(static_cast<std::uint8_t>((n >> shift) & 0xff));
    }
    bytes_.insert(bytes_.end(), data.begin(), data.end());
    return *this;
}

Script& Script::push_opcode(std::uint8_t opcode)
{
    bytes_.push_back(opcode);
    return *this;
}

std::string script_to_asm(const Script& script)
{
    std::string out;
    for (const auto& o : script.ops()) {
        if (!out.empty())
            out.push_back(' ');
        if (o.is_push() && o.opcode != op::zero) {
            auto hex = to_hex(o.data);
            // one-byte pushes 0x10..0x16 would read back as OP_10..OP_16
            if (is_small_int_token(hex))
                out += "0x";
            out += hex;
        } else {
            out += opcode_name(o.opcode);
        }
    }
    return out;
}

Script script_from_asm(std::string_view asm_text)
{
    Script s;
    std::istringstream in{std::string(asm_text)};
    std::string token;
    while (in >> token) {
        if (is_small_int_token(token)) {
            int v = std::stoi(token);
            s.push_opcode(v == 0 ? op::zero : v == -1 ? op::one_negate : static_cast<std::uint8_t>(op::one + v - 1));
            continue;
        }
        if (token.rfind("OP_", 0) == 0) {
            bool found = false;
            for (int i = 0; i < 256 && !found; ++i) {
                if (opcode_names[i] == token && token != "OP_UNKNOWN" && !(i >= op::pushdata1 && i <= op::pushdata4)) {
                    s.push_opcode(static_cast<std::uint8_t>(i));
                    found = true;
                }
            }
            if (!found)
                throw Error(ErrorCode::MalformedScript, "unknown opcode token '" + token + "'");
            continue;
        }
        std::string_view hex = token;
        if (hex.rfind("0x", 0) == 0)
            hex.remove_prefix(2);
        try {
            s.push_data(from_hex(hex));
        } catch (const Error&) {
            throw Error(ErrorCode::MalformedScript, "token '" + token + "' is neither an opcode nor hex data");
        }
    }
    return s;
}

std::string_view to_string(ScriptKind kind) noexcept
{
    switch (kind) {
    case ScriptKind::p2pkh: return "pubkeyhash";
    case ScriptKind::p2sh: return "scripthash";
    case ScriptKind::multisig: return "multisig";
    case ScriptKind::nulldata: return "nulldata";
    case ScriptKind::nonstandard: return "nonstandard";
    }
    return "nonstandard";
}

namespace {

bool pubkey_shaped(const Bytes& data)
{
    return (data.size() == PublicKey::compressed_size && (data[0] == 0x02 || data[0] == 0x03))
        || (data.size() == PublicKey::uncompressed_size && data[0] == 0x04);
}

std::optional<DecodedScript> as_multisig(const std::vector<ScriptOp>& ops, Network net)
{
    if (ops.size() < 4 || ops.back().opcode != op::checkmultisig)
        return std::nullopt;
    auto m = ops.front().small_int();
    auto n = ops[ops.size() - 2].small_int();
    if (!m || !n || *m < 1 || *m > *n || *n > max_multisig_keys)
        return std::nullopt;
    if (ops.size() != static_cast<std::size_t>(*n) + 3)
        return std::nullopt;

    DecodedScript d;
    d.kind = ScriptKind::multisig;
    d.req_sigs = *m;
    d.addresses.emplace();
    for (std::size_t i = 1; i + 2 < ops.size(); ++i) {
        const auto& o = ops[i];
        if (!o.is_push() || !pubkey_shaped(o.data))
            return std::nullopt;
        try {
            d.pubkeys.push_back(PublicKey::from_bytes(o.data));
        } catch (const Error&) {
            return std::nullopt;
        }
        d.addresses->push_back(pubkey_to_address(d.pubkeys.back(), net));
    }
    return d;
}

} // namespace

DecodedScript decode_script(const Script& script, Network net)
{
    const auto& b = script.bytes();
    DecodedScript d;

    if (b.size() == 25 && b[0] == op::dup && b[1] == op::hash160 && b[2] == 20 && b[23] == op::equalverify && b[24] == op::checksig) {
        d.kind = ScriptKind::p2pkh;
        d.req_sigs = 1;
        d.addresses = std::vector{Address::from_parts(AddressType::p2pkh, Digest160::from_bytes(ByteView(b).subspan(3, 20)), net)};
        return d;
    }
    if (b.size() == 23 && b[0] == op::hash160 && b[1] == 20 && b[22] == op::equal) {
        d.kind = ScriptKind::p2sh;
        d.req_sigs = 1;
        d.addresses = std::vector{Address::from_parts(AddressType::p2sh, Digest160::from_bytes(ByteView(b).subspan(2, 20)), net)};
        return d;
    }
    if (auto payload = nulldata_payload(script)) {
        d.kind = ScriptKind::nulldata;
        d.payload = std::move(payload);
        return d;
    }
    std::vector<ScriptOp> ops;
    try {
        ops = script.ops();
    } catch (const Error&) {
        return d; // unparseable scripts are nonstandard
    }
    if (auto multisig = as_multisig(ops, net))
        return std::move(*multisig);
    return d;
}

std::optional<Bytes> nulldata_payload(const Script& script)
{
    const auto& b = script.bytes();
    if (b.empty() || b[0] != op::op_return)
        return std::nullopt;
    Script rest(Bytes(b.begin() + 1, b.end()));
    Bytes payload;
    for (const auto& o : rest.ops()) {
        if (o.opcode > op::sixteen)
            return std::nullopt;
        payload.insert(payload.end(), o.data.begin(), o.data.end());
    }
    return payload;
}

Script make_nulldata_script(ByteView payload)
{
    Script s;
    s.push_opcode(op::op_return);
    s.push_data(payload);
    return s;
}

Script make_p2pkh_script(const Digest160& key_hash)
{
    Script s;
    s.push_opcode(op::dup).push_opcode(op::hash160).push_data(key_hash.view()).push_opcode(op::equalverify).push_opcode(op::checksig);
    return s;
}

Script make_p2sh_script(const Digest160& script_hash)
{
    Script s;
    s.push_opcode(op::hash160).push_data(script_hash.view()).push_opcode(op::equal);
    return s;
}

} // namespace eaward
