#include "eaward/address.hpp"

#include "eaward/error.hpp"

namespace eaward {

namespace {

constexpr NetworkParams mainnet_params{"mainnet", 0x00, 0x05, 0x80};
constexpr NetworkParams testnet_params{"testnet", 0x6f, 0xc4, 0xef};

} // namespace

const NetworkParams& params(Network net) noexcept
{
    return net == Network::mainnet ? mainnet_params : testnet_params;
}

std::string_view to_string(Network net) noexcept
{
    return params(net).name;
}

Network network_from_name(std::string_view name)
{
    if (name == "mainnet" || name == "main")
        return Network::mainnet;
    if (name == "testnet" || name == "test")
        return Network::testnet;
    throw Error(ErrorCode::InvalidDocument, "unknown network '" + std::string(name) + "'");
}

Address Address::parse(std::string_view text)
{
    auto [version, payload] = base58check_decode(text);
    Address a;
    a.version_ = version;
    a.payload_ = payload;
    a.text_ = std::string(text);
    bool known = false;
    for (auto net : {Network::mainnet, Network::testnet}) {
        const auto& p = params(net);
        if (version == p.p2pkh_version || version == p.p2sh_version) {
            a.network_ = net;
            a.type_ = version == p.p2pkh_version ? AddressType::p2pkh : AddressType::p2sh;
            known = true;
        }
    }
    if (!known)
        throw Error(ErrorCode::InvalidDocument, "unsupported address version byte " + std::to_string(version));
    return a;
}

Address Address::from_parts(AddressType type, const Digest160& payload, Network net)
{
    const auto& p = params(net);
    Address a;
    a.version_ = type == AddressType::p2pkh ? p.p2pkh_version : p.p2sh_version;
    a.payload_ = payload;
    a.text_ = base58check_encode(a.version_, payload);
    a.network_ = net;
    a.type_ = type;
    return a;
}

std::string Address::suffix(std::size_t n) const
{
    return n >= text_.size() ? text_ : text_.substr(text_.size() - n);
}

} // namespace eaward
