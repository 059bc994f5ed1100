#ifndef EAWARD_ADDRESS_HPP
#define EAWARD_ADDRESS_HPP

#include "eaward/crypto.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace eaward {

enum class Network { mainnet, testnet };

struct NetworkParams {
    std::string_view name;
    std::uint8_t p2pkh_version;
    std::uint8_t p2sh_version;
    std::uint8_t wif_version;
};

const NetworkParams& params(Network net) noexcept;
std::string_view to_string(Network net) noexcept;
/// Accepts "mainnet"/"main" and "testnet"/"test"; throws InvalidDocument otherwise.
Network network_from_name(std::string_view name);

enum class AddressType { p2pkh, p2sh };

/// A legacy base58check address. The text form is cached and always
/// consistent with (version, payload).
class Address {
public:
    /// Throws on bad base58check text, or a version byte that is not a known
    /// P2PKH/P2SH version (InvalidDocument).
    static Address parse(std::string_view text);
    static Address from_parts(AddressType type, const Digest160& payload, Network net);

    [[nodiscard]] std::uint8_t version() const noexcept { return version_; }
    [[nodiscard]] const Digest160& payload() const noexcept { return payload_; }
    [[nodiscard]] const std::string& text() const noexcept { return text_; }
    [[nodiscard]] Network network() const noexcept { return network_; }
    [[nodiscard]] AddressType type() const noexcept { return type_; }
    /// Last `n` characters of the text form.
    [[nodiscard]] std::string suffix(std::size_t n = 5) const;

    bool operator==(const Address& other) const noexcept { return text_ == other.text_; }

private:
    Address() = default;
    std::uint8_t version_ = 0;
    Digest160 payload_;
    std::string text_;
    Network network_ = Network::testnet;
    AddressType type_ = AddressType::p2pkh;
};

} // namespace eaward

#endif
