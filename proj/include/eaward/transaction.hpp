#ifndef EAWARD_TRANSACTION_HPP
#define EAWARD_TRANSACTION_HPP

#include "eaward/crypto.hpp"
#include "eaward/script.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace eaward {

inline constexpr std::uint64_t max_money = 21'000'000ULL * 100'000'000ULL;

/// Transaction id. Stored in internal (hash) byte order; displayed reversed.
struct Txid {
    Digest256 hash;

    /// Parses the usual byte-reversed display form.
    static Txid from_hex(std::string_view display_hex);
    [[nodiscard]] std::string hex() const;

    auto operator<=>(const Txid&) const = default;
};

struct TxInput {
    Txid prev_txid;
    std::uint32_t prev_vout = 0;
    Script script_sig;
    std::uint32_t sequence = 0xffffffff;
    std::vector<Bytes> witness;

    [[nodiscard]] bool is_coinbase() const noexcept
    {
        return prev_vout == 0xffffffff && prev_txid.hash == Digest256{};
    }
    bool operator==(const TxInput&) const = default;
};

struct TxOutput {
    std::uint64_t value = 0; ///< satoshi
    Script script_pubkey;

    bool operator==(const TxOutput&) const = default;
};

struct Transaction {
    std::int32_t version = 2;
    std::vector<TxInput> inputs;
    std::vector<TxOutput> outputs;
    std::uint32_t locktime = 0;

    [[nodiscard]] bool has_witness() const noexcept;
    bool operator==(const Transaction&) const = default;
};

/// Accepts legacy and witness-flagged serializations.
/// Throws MalformedHex, TruncatedData, TrailingBytes, MalformedTransaction
/// or ValueOutOfRange.
Transaction parse_transaction(std::string_view hex);
Transaction parse_transaction(ByteView raw);

Bytes serialize(const Transaction& tx, bool include_witness = true);
inline std::string serialize_hex(const Transaction& tx) { return to_hex(serialize(tx)); }

/// Reversed hash256 of the witness-stripped serialization.
Txid compute_txid(const Transaction& tx);
/// Same hash over the full serialization (equals the txid without witness).
Txid compute_wtxid(const Transaction& tx);

/// Payloads of every nulldata output, in output order.
std::vector<Bytes> extract_op_return(const Transaction& tx);

/// Sum of all output values.
std::uint64_t total_output_value(const Transaction& tx) noexcept;

/// "0.00500000": fixed 8 decimal places.
std::string format_btc(std::uint64_t satoshi);

} // namespace eaward

#endif
