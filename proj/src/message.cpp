#include "eaward/message.hpp"

#include "eaward/error.hpp"
#include "eaward/escrow.hpp"
#include "eaward/metadata.hpp"

namespace eaward {

namespace {

constexpr std::string_view message_magic = "Bitcoin Signed Message:\n";

void append_compact_size(Bytes& out, std::uint64_t n)
{
    auto le = [&](std::uint64_t v, int width) {
        for (int i = 0; i < width; ++i)
            out.push_back(static_cast<std::uint8_t>((v >> (8 * i)) & 0xff));
    };
    if (n < 0xfd) {
        le(n, 1);
    } else if (n <= 0xffff) {
        out.push_back(0xfd);
        le(n, 2);
    } else if (n <= 0xffffffffULL) {
        out.push_back(0xfe);
        le(n, 4);
    } else {
        out.push_back(0xff);
        le(n, 8);
    }
}

} // namespace

Digest256 message_digest(std::string_view message)
{
    Bytes buf;
    buf.reserve(1 + message_magic.size() + 9 + message.size());
    append_compact_size(buf, message_magic.size());
    buf.insert(buf.end(), message_magic.begin(), message_magic.end());
    append_compact_size(buf, message.size());
    buf.insert(buf.end(), message.begin(), message.end());
    return hash256(buf);
}

SignedMessage sign_message(const PrivateKey& key, std::string_view message, Network net)
{
    auto sig = sign_recoverable(key, message_digest(message));
    return SignedMessage{pubkey_to_address(key.public_key(), net), std::string(message), base64_encode(sig.serialize())};
}

bool verify_message(const Address& address, std::string_view signature_b64, std::string_view message)
{
    Bytes raw;
    try {
        raw = base64_decode(signature_b64);
    } catch (const Error& e) {
        throw Error(ErrorCode::MalformedSignature, std::string("signature is not base64: ") + e.what());
    }
    auto sig = RecoverableSig::parse(raw);

    if (address.type() != AddressType::p2pkh)
        return false;
    try {
        auto key = recover_public_key(sig, message_digest(message));
        return pubkey_to_address(key, address.network()) == address;
    } catch (const Error& e) {
        if (e.code() == ErrorCode::RecoveryFailed)
            return false;
        throw;
    }
}

bool verify_message(const SignedMessage& signed_message)
{
    return verify_message(signed_message.address, signed_message.signature_b64, signed_message.message);
}

std::string signature_fragment(std::string_view signature_b64)
{
    if (signature_b64.size() < fragment_length)
        throw Error(ErrorCode::MalformedSignature, "signature shorter than the fragment length");
    return std::string(signature_b64.substr(signature_b64.size() - fragment_length));
}

bool match_fragment(std::string_view signature_b64, std::string_view fragment)
{
    if (fragment.size() != fragment_length)
        throw Error(ErrorCode::BadFragmentLength, "fragment must be " + std::to_string(fragment_length) + " characters, got " + std::to_string(fragment.size()));
    return signature_b64.size() >= fragment_length && signature_b64.substr(signature_b64.size() - fragment_length) == fragment;
}

} // namespace eaward
