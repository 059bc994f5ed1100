#ifndef EAWARD_JSON_IO_HPP
#define EAWARD_JSON_IO_HPP

#include "eaward/anchor.hpp"
#include "eaward/attestation.hpp"
#include "eaward/escrow.hpp"
#include "eaward/metadata.hpp"
#include "eaward/script.hpp"
#include "eaward/transaction.hpp"

#include <json.hpp>

#include <filesystem>
#include <string_view>

namespace eaward {

// All readers throw InvalidDocument on missing or mistyped fields.

/// {"m": 2, "network": "testnet", "pubkeys": ["02..", ...]}
struct PolicyFile {
    EscrowPolicy policy;
    Network network = Network::testnet;
};
PolicyFile policy_from_json(const nlohmann::json& j);
nlohmann::json to_json(const EscrowPolicy& policy, Network net);

/// {"seat", "seat_jurisdiction", "reasoned_award_opt_out",
///  "parties": [{"role": "A", "legal_name", "display_name", "address"}],
///  "policy": {"m", "pubkeys"}, "agreement_text_hash"?}
ArbitrationAgreement agreement_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ArbitrationAgreement& a);

nlohmann::json load_json_file(const std::filesystem::path& path);

/// decoderawtransaction-shaped: txid, hash, version, size, locktime,
/// vin[].scriptSig.{asm,hex}, vout[].scriptPubKey.{asm,hex,type,reqSigs,addresses}.
nlohmann::json to_json(const Transaction& tx, Network net);
/// decodescript-shaped: asm, hex, type, reqSigs, addresses, p2sh.
nlohmann::json script_to_json(const Script& script, Network net);

nlohmann::json to_json(const AwardMetadata& meta);
nlohmann::json to_json(const LinkageReport& report);
nlohmann::json to_json(const AnchorProof& proof);
nlohmann::json to_json(const AuthenticationCertificate& cert);
nlohmann::json to_json(const std::vector<AgreementIssue>& issues);

} // namespace eaward

#endif
