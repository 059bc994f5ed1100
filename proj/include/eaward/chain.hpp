#ifndef EAWARD_CHAIN_HPP
#define EAWARD_CHAIN_HPP

#include "eaward/address.hpp"
#include "eaward/time.hpp"
#include "eaward/transaction.hpp"

#include <chrono>
#include <filesystem>
#include <optional>
#include <string>

namespace eaward {

struct TxStatus {
    std::optional<UtcTime> block_time;
    std::uint32_t confirmations = 0;
    std::optional<std::string> block_hash;

    bool operator==(const TxStatus&) const = default;
};

struct ChainSource {
    enum class Mode { live, fixture };

    Mode mode = Mode::fixture;
    std::optional<std::string> endpoint;              ///< live: Esplora-style base URL
    std::optional<std::filesystem::path> fixture_root; ///< fixture: directory of <txid>.hex / .status
    Network network = Network::testnet;
    std::chrono::milliseconds timeout{10'000};

    static ChainSource live(std::string endpoint, Network net = Network::testnet);
    static ChainSource fixture(std::filesystem::path root, Network net = Network::testnet);
};

/// Explorer-style access to raw transactions. Every transaction handed out is
/// re-hashed locally and must match the requested txid.
///
/// Live mode talks to an Esplora-compatible REST API:
///   GET  <endpoint>/tx/<txid>/hex
///   GET  <endpoint>/tx/<txid>/status
///   GET  <endpoint>/blocks/tip/height
///   POST <endpoint>/tx
/// Fixture mode reads <root>/<txid>.hex and <root>/<txid>.status (JSON) and
/// records broadcasts in <root>/mempool.txt.
class ChainClient {
public:
    /// Throws InvalidDocument when the source lacks its endpoint or root.
    explicit ChainClient(ChainSource source);

    [[nodiscard]] const ChainSource& source() const noexcept { return source_; }

    /// Throws NotFound, TransportError or TxidMismatch.
    std::string get_raw_transaction(const Txid& txid) const;
    /// Throws NotFound or TransportError.
    TxStatus get_tx_status(const Txid& txid) const;
    /// Throws Rejected (including unparseable hex, before any transport) or TransportError.
    Txid broadcast(std::string_view hex) const;

private:
    ChainSource source_;
};

/// Reads a fixture status sidecar; throws InvalidDocument when
/// confirmations == 0 disagrees with the presence of block fields.
TxStatus parse_status_json(std::string_view text);
std::string status_to_json(const TxStatus& status);

} // namespace eaward

#endif
