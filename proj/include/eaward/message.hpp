#ifndef EAWARD_MESSAGE_HPP
#define EAWARD_MESSAGE_HPP

#include "eaward/address.hpp"
#include "eaward/crypto.hpp"

#include <string>
#include <string_view>

namespace eaward {

/// A wallet "signmessage" result.
struct SignedMessage {
    Address address;
    std::string message;
    std::string signature_b64;
};

/// hash256(0x18 "Bitcoin Signed Message:\n" || compact_size(len) || message)
Digest256 message_digest(std::string_view message);

SignedMessage sign_message(const PrivateKey& key, std::string_view message, Network net);

/// True iff the key recovered from the signature hashes to `address`
/// (P2PKH, compressed per the header flag). A signature that does not
/// decode to 65 bytes throws MalformedSignature; every other mismatch,
/// including an unrecoverable r/s, is a plain false.
bool verify_message(const Address& address, std::string_view signature_b64, std::string_view message);
bool verify_message(const SignedMessage& signed_message);

/// True iff `fragment` equals the last 28 characters of the signature.
/// Throws BadFragmentLength when the fragment is not 28 characters.
bool match_fragment(std::string_view signature_b64, std::string_view fragment);

/// Last 28 characters of an encoded signature.
std::string signature_fragment(std::string_view signature_b64);

} // namespace eaward

#endif
