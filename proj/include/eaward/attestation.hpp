#ifndef EAWARD_ATTESTATION_HPP
#define EAWARD_ATTESTATION_HPP

#include "eaward/address.hpp"
#include "eaward/chain.hpp"
#include "eaward/escrow.hpp"
#include "eaward/message.hpp"
#include "eaward/metadata.hpp"
#include "eaward/time.hpp"
#include "eaward/transaction.hpp"

#include <optional>
#include <string>
#include <vector>

namespace eaward {

enum class SeatJurisdiction { england, switzerland, other };

std::string_view to_string(SeatJurisdiction j) noexcept;
SeatJurisdiction jurisdiction_from_name(std::string_view name);

struct Party {
    Role role = Role::arbitrator;
    std::string legal_name;
    std::string display_name; ///< the on-chain name token
    Address address;
};

/// Off-chain agreement binding names and roles to wallet addresses.
struct ArbitrationAgreement {
    std::vector<Party> parties;
    std::string seat;
    SeatJurisdiction seat_jurisdiction = SeatJurisdiction::other;
    bool reasoned_award_opt_out = false;
    EscrowPolicy policy;
    std::optional<Digest256> agreement_text_hash;

    /// First party with `role`, or nullptr.
    [[nodiscard]] const Party* party(Role role) const noexcept;
    [[nodiscard]] const Party* party_by_address(const Address& address) const noexcept;
    /// Network of the first party's address (testnet when there are no parties).
    [[nodiscard]] Network network() const noexcept;
};

struct AgreementIssue {
    enum class Severity { violation, warning };
    Severity severity = Severity::violation;
    std::string message;
};

/// Violations break the agreement's invariants. Warnings flag conditions
/// that weaken recognisability of the award (seat outside England or
/// Switzerland, no reasoned-award opt-out) without invalidating the record.
std::vector<AgreementIssue> validate_agreement(const ArbitrationAgreement& a);
bool has_violations(const std::vector<AgreementIssue>& issues) noexcept;

/// The metadata line an agreement produces once the arbitrator's signature
/// fragment is known. Throws InvalidDocument when a role is missing.
AwardMetadata metadata_for(const ArbitrationAgreement& a, std::string sig_fragment);
/// The text the arbitrator signs for this agreement.
std::string attest_message_for(const ArbitrationAgreement& a);

struct LinkageReport {
    struct PartyCheck {
        Role role = Role::arbitrator;
        std::optional<Address> agreement_address;
        std::string metadata_name;
        std::string metadata_suffix;
        bool suffix_match = false;
        bool address_in_script = false;
    };

    std::array<PartyCheck, 3> parties; ///< indexed A, C, R
    bool seat_match = false;
    AwardMetadata metadata;
    Txid txid;
    int req_sigs = 0;
    std::vector<Address> script_addresses;
    RedeemScript redeem_script;

    /// Conjunction of every component check.
    [[nodiscard]] bool overall() const noexcept;
    /// Human-readable list of the checks that failed.
    [[nodiscard]] std::vector<std::string> failures() const;
};

/// Reads the redeem script from the final scriptSig push of the first input
/// (every input must carry the same one) and the award metadata from the
/// first decodable OP_RETURN payload, then compares both with the agreement.
/// Throws NoRedeemScript, NoMetadata or MetadataUnparseable.
LinkageReport match_transaction(const ArbitrationAgreement& a, const Transaction& tx);

struct VerifiedAttestation {
    SignedMessage signed_message;
    Role role = Role::arbitrator;
    bool fragment_match = false; ///< meaningful for the arbitrator only
};

struct TimeEvidence {
    UtcTime block_time;
    std::uint32_t confirmations = 0;
    std::optional<std::string> block_hash;
};

struct IntentEvidence {
    std::optional<Digest256> agreement_text_hash;
    bool reasoned_award_opt_out = false;
    std::string attest_message;
    std::string seat;
    SeatJurisdiction seat_jurisdiction = SeatJurisdiction::other;
};

/// Evidence bundle covering origin (who), time (when) and intent (legal
/// effect). Only issue_certificate can create one, and only from inputs that
/// pass every check.
class AuthenticationCertificate {
public:
    [[nodiscard]] const Txid& txid() const noexcept { return txid_; }
    [[nodiscard]] const std::vector<VerifiedAttestation>& attestations() const noexcept { return attestations_; }
    [[nodiscard]] const LinkageReport& linkage() const noexcept { return linkage_; }
    [[nodiscard]] const TimeEvidence& time_evidence() const noexcept { return time_; }
    [[nodiscard]] const IntentEvidence& intent_evidence() const noexcept { return intent_; }
    [[nodiscard]] std::uint64_t amount_satoshi() const noexcept { return amount_; }
    [[nodiscard]] const std::string& certifier() const noexcept { return certifier_; }
    [[nodiscard]] UtcTime issued_at() const noexcept { return issued_at_; }
    [[nodiscard]] const std::vector<std::string>& findings() const noexcept { return findings_; }
    [[nodiscard]] const std::vector<std::string>& caveats() const noexcept { return caveats_; }
    /// Narrative text block; deterministic for identical inputs and issued_at.
    [[nodiscard]] std::string statement() const;

private:
    friend AuthenticationCertificate issue_certificate(const ArbitrationAgreement&, const Transaction&,
        const std::optional<TxStatus>&, const std::vector<SignedMessage>&, const std::string&, UtcTime);
    AuthenticationCertificate() = default;

    Txid txid_;
    std::vector<VerifiedAttestation> attestations_;
    LinkageReport linkage_;
    TimeEvidence time_;
    IntentEvidence intent_;
    std::uint64_t amount_ = 0;
    std::string certifier_;
    UtcTime issued_at_;
    std::vector<std::string> findings_;
    std::vector<std::string> caveats_;
};

/// Throws LinkageFailed, AttestationInvalid, MissingArbitratorAttestation,
/// NoTimeEvidence, plus anything match_transaction throws.
AuthenticationCertificate issue_certificate(const ArbitrationAgreement& a, const Transaction& tx,
    const std::optional<TxStatus>& status, const std::vector<SignedMessage>& attestations,
    const std::string& certifier, UtcTime issued_at);

} // namespace eaward

#endif
