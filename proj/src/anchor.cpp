#include "eaward/anchor.hpp"

#include "eaward/error.hpp"
#include "fileio.hpp"

#include <algorithm>

namespace eaward {

namespace fs = std::filesystem;

AwardDocument AwardDocument::from_file(const fs::path& path)
{
    AwardDocument doc;
    doc.bytes = detail::read_file(path);
    if (path.has_extension())
        doc.media_hint = path.extension().string();
    return doc;
}

Digest256 checksum_award(const AwardDocument& doc)
{
    if (doc.bytes.empty())
        throw Error(ErrorCode::EmptyDocument, "award document is empty");
    return sha256(doc.bytes);
}

Bytes build_anchor_payload(const Digest256& hash)
{
    return Bytes(hash.bytes.begin(), hash.bytes.end());
}

AnchorProof verify_anchor(const AwardDocument& doc, const Transaction& tx)
{
    auto digest = checksum_award(doc);
    auto expected = build_anchor_payload(digest);
    bool any_nulldata = false;
    for (std::size_t i = 0; i < tx.outputs.size(); ++i) {
        std::optional<Bytes> payload;
        try {
            payload = nulldata_payload(tx.outputs[i].script_pubkey);
        } catch (const Error&) {
            continue;
        }
        if (!payload)
            continue;
        any_nulldata = true;
        if (*payload == expected)
            return AnchorProof{digest, compute_txid(tx), i, std::nullopt, std::nullopt};
    }
    if (!any_nulldata)
        throw Error(ErrorCode::NoAnchorFound, "transaction " + compute_txid(tx).hex() + " has no OP_RETURN output");
    throw Error(ErrorCode::HashMismatch, "no OP_RETURN output of " + compute_txid(tx).hex() + " carries " + digest.hex());
}

ObjectStore::ObjectStore(fs::path root) : root_(std::move(root))
{
    fs::create_directories(root_);
}

fs::path ObjectStore::path_for(const Digest256& id) const
{
    return root_ / id.hex();
}

bool ObjectStore::contains(const Digest256& id) const
{
    return fs::exists(path_for(id));
}

Digest256 ObjectStore::store(ByteView bytes) const
{
    if (bytes.empty())
        throw Error(ErrorCode::EmptyDocument, "refusing to store an empty object");
    auto id = sha256(bytes);
    auto path = path_for(id);
    if (!fs::exists(path) || sha256(detail::read_file(path)) != id)
        detail::write_file_atomic(path, bytes);
    return id;
}

Bytes ObjectStore::fetch(const Digest256& id) const
{
    auto path = path_for(id);
    if (!fs::exists(path))
        throw Error(ErrorCode::NotFound, "no object " + id.hex() + " in " + root_.string());
    auto bytes = detail::read_file(path);
    if (sha256(bytes) != id)
        throw Error(ErrorCode::IntegrityFailure, "object " + id.hex() + " no longer matches its content id");
    return bytes;
}

} // namespace eaward
