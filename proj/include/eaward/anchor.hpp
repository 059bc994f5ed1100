#ifndef EAWARD_ANCHOR_HPP
#define EAWARD_ANCHOR_HPP

#include "eaward/crypto.hpp"
#include "eaward/time.hpp"
#include "eaward/transaction.hpp"

#include <filesystem>
#include <optional>
#include <string>

namespace eaward {

struct AwardDocument {
    Bytes bytes;
    std::optional<std::string> media_hint;

    static AwardDocument from_file(const std::filesystem::path& path);
};

struct AnchorProof {
    Digest256 doc_hash;
    Txid txid;
    std::size_t vout_index = 0;
    std::optional<UtcTime> block_time;
    std::optional<std::uint32_t> confirmations;
};

/// sha256 of the document bytes. Throws EmptyDocument.
Digest256 checksum_award(const AwardDocument& doc);

/// The raw 32 digest bytes.
Bytes build_anchor_payload(const Digest256& hash);

/// Finds the nulldata output whose payload is the document digest.
/// Throws NoAnchorFound when the transaction has no nulldata output and
/// HashMismatch when none of them carries the digest.
AnchorProof verify_anchor(const AwardDocument& doc, const Transaction& tx);

/// Content-addressed local object store: one file per object, named by the
/// hex sha256 of its bytes, under `root`. Writes go through a temporary file
/// and an atomic rename, so readers never see a partial object.
class ObjectStore {
public:
    explicit ObjectStore(std::filesystem::path root);

    [[nodiscard]] const std::filesystem::path& root() const noexcept { return root_; }

    /// Idempotent. Throws EmptyDocument for empty input.
    Digest256 store(ByteView bytes) const;
    /// Throws NotFound, or IntegrityFailure if the file no longer hashes to `id`.
    Bytes fetch(const Digest256& id) const;
    [[nodiscard]] bool contains(const Digest256& id) const;
    [[nodiscard]] std::filesystem::path path_for(const Digest256& id) const;

private:
    std::filesystem::path root_;
};

} // namespace eaward

#endif
