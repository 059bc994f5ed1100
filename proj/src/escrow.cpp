#include "eaward/escrow.hpp"

#include "eaward/error.hpp"

#include <algorithm>

namespace eaward {

std::vector<std::string> EscrowPolicy::problems() const
{
    std::vector<std::string> out;
    if (pubkeys.empty())
        out.emplace_back("policy has no public keys");
    if (n() > max_multisig_keys)
        out.push_back("n = " + std::to_string(n()) + " exceeds " + std::to_string(max_multisig_keys));
    if (m < 1 || m > max_multisig_keys)
        out.push_back("m = " + std::to_string(m) + " outside 1.." + std::to_string(max_multisig_keys));
    else if (m > n())
        out.push_back("m = " + std::to_string(m) + " exceeds n = " + std::to_string(n()));
    for (std::size_t i = 0; i < pubkeys.size(); ++i) {
        if (!pubkeys[i].compressed())
            out.push_back("key " + std::to_string(i) + " is not compressed");
        for (std::size_t j = 0; j < i; ++j)
            if (pubkeys[i] == pubkeys[j])
                out.push_back("key " + std::to_string(i) + " duplicates key " + std::to_string(j));
    }
    return out;
}

RedeemScript build_redeem_script(const EscrowPolicy& policy)
{
    if (auto issues = policy.problems(); !issues.empty())
        throw Error(ErrorCode::PolicyInvalid, issues.front());

    constexpr std::uint8_t op_1 = 0x51 - 1; // OP_k == op_1 + k
    constexpr std::uint8_t op_checkmultisig = 0xae;

    RedeemScript script;
    script.bytes.reserve(3 + policy.pubkeys.size() * 34);
    script.bytes.push_back(static_cast<std::uint8_t>(op_1 + policy.m));
    for (const auto& key : policy.pubkeys) {
        script.bytes.push_back(static_cast<std::uint8_t>(key.bytes().size()));
        script.bytes.insert(script.bytes.end(), key.bytes().begin(), key.bytes().end());
    }
    script.bytes.push_back(static_cast<std::uint8_t>(op_1 + policy.n()));
    script.bytes.push_back(op_checkmultisig);
    return script;
}

Address p2sh_address(const RedeemScript& script, Network net)
{
    return Address::from_parts(AddressType::p2sh, hash160(script.bytes), net);
}

Address pubkey_to_address(const PublicKey& key, Network net)
{
    return Address::from_parts(AddressType::p2pkh, hash160(key.bytes()), net);
}

} // namespace eaward
