#ifndef EAWARD_ESCROW_HPP
#define EAWARD_ESCROW_HPP

#include "eaward/address.hpp"
#include "eaward/crypto.hpp"

#include <string>
#include <vector>

namespace eaward {

inline constexpr int max_multisig_keys = 15;

/// M-of-N escrow. Key order is the caller's and is preserved in the script.
struct EscrowPolicy {
    int m = 0;
    std::vector<PublicKey> pubkeys;

    [[nodiscard]] int n() const noexcept { return static_cast<int>(pubkeys.size()); }
    /// Empty when 1 <= m <= n <= 15, keys are compressed and distinct.
    [[nodiscard]] std::vector<std::string> problems() const;
};

struct RedeemScript {
    Bytes bytes;

    [[nodiscard]] std::string hex() const { return to_hex(bytes); }
    bool operator==(const RedeemScript&) const = default;
};

/// OP_m <0x21 key>... OP_n OP_CHECKMULTISIG. Throws PolicyInvalid.
RedeemScript build_redeem_script(const EscrowPolicy& policy);

Address p2sh_address(const RedeemScript& script, Network net);
Address pubkey_to_address(const PublicKey& key, Network net);

} // namespace eaward

#endif
