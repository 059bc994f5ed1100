#include "eaward/attestation.hpp"

#include "eaward/error.hpp"

#include <algorithm>
#include <sstream>

namespace eaward {

std::string_view to_string(SeatJurisdiction j) noexcept
{
    switch (j) {
    case SeatJurisdiction::england: return "England";
    case SeatJurisdiction::switzerland: return "Switzerland";
    case SeatJurisdiction::other: return "other";
    }
    return "other";
}

SeatJurisdiction jurisdiction_from_name(std::string_view name)
{
    std::string n(name);
    std::transform(n.begin(), n.end(), n.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (n == "england" || n == "england and wales" || n == "united kingdom" || n == "uk")
        return SeatJurisdiction::england;
    if (n == "switzerland")
        return SeatJurisdiction::switzerland;
    if (n == "other")
        return SeatJurisdiction::other;
    throw Error(ErrorCode::InvalidDocument, "unknown seat jurisdiction '" + std::string(name) + "'");
}

const Party* ArbitrationAgreement::party(Role role) const noexcept
{
    auto it = std::find_if(parties.begin(), parties.end(), [&](const Party& p) { return p.role == role; });
    return it == parties.end() ? nullptr : &*it;
}

const Party* ArbitrationAgreement::party_by_address(const Address& address) const noexcept
{
    auto it = std::find_if(parties.begin(), parties.end(), [&](const Party& p) { return p.address == address; });
    return it == parties.end() ? nullptr : &*it;
}

Network ArbitrationAgreement::network() const noexcept
{
    return parties.empty() ? Network::testnet : parties.front().address.network();
}

bool has_violations(const std::vector<AgreementIssue>& issues) noexcept
{
    return std::any_of(issues.begin(), issues.end(), [](const AgreementIssue& i) { return i.severity == AgreementIssue::Severity::violation; });
}

std::vector<AgreementIssue> validate_agreement(const ArbitrationAgreement& a)
{
    std::vector<AgreementIssue> out;
    auto violation = [&](std::string m) { out.push_back({AgreementIssue::Severity::violation, std::move(m)}); };
    auto warning = [&](std::string m) { out.push_back({AgreementIssue::Severity::warning, std::move(m)}); };

    for (auto role : all_roles) {
        auto n = std::count_if(a.parties.begin(), a.parties.end(), [&](const Party& p) { return p.role == role; });
        if (n == 0)
            violation(std::string("no party with role ") + role_letter(role) + " (" + std::string(role_name(role)) + ")");
        else if (n > 1)
            violation(std::string("more than one party with role ") + role_letter(role));
    }

    for (std::size_t i = 0; i < a.parties.size(); ++i) {
        const auto& p = a.parties[i];
        if (p.legal_name.empty())
            violation("party " + std::to_string(i) + " has no legal name");
        if (!valid_display_token(p.display_name))
            violation("display name '" + p.display_name + "' must be non-empty ASCII alphanumerics");
        if (p.address.type() != AddressType::p2pkh)
            violation("address " + p.address.text() + " is not a pay-to-pubkey-hash wallet address");
        if (p.address.network() != a.network())
            violation("address " + p.address.text() + " is on " + std::string(to_string(p.address.network())) + ", other parties are on " + std::string(to_string(a.network())));
        for (std::size_t j = 0; j < i; ++j)
            if (a.parties[j].address == p.address)
                violation("parties " + std::to_string(j) + " and " + std::to_string(i) + " share address " + p.address.text());
    }

    if (!valid_display_token(a.seat))
        violation("seat '" + a.seat + "' must be a single alphanumeric token");

    for (const auto& problem : a.policy.problems())
        violation("escrow policy: " + problem);

    // policy keys <-> party addresses, one to one
    if (a.policy.pubkeys.size() != a.parties.size()) {
        violation("escrow policy lists " + std::to_string(a.policy.pubkeys.size()) + " keys for " + std::to_string(a.parties.size()) + " parties");
    } else {
        for (const auto& key : a.policy.pubkeys) {
            auto addr = pubkey_to_address(key, a.network());
            if (!a.party_by_address(addr))
                violation("policy key " + key.hex() + " (" + addr.text() + ") belongs to no party");
        }
    }

    bool roles_complete = std::all_of(all_roles.begin(), all_roles.end(), [&](Role r) { return a.party(r) != nullptr; });
    if (roles_complete && valid_display_token(a.seat)) {
        auto line_size = attest_message_for(a).size() + 1 + fragment_length;
        if (line_size > max_payload_size)
            violation("metadata line would be " + std::to_string(line_size) + " bytes, limit is " + std::to_string(max_payload_size));
    }

    if (a.seat_jurisdiction == SeatJurisdiction::other)
        warning("seat is outside England and Switzerland; an electronic award may not satisfy the lex arbitri form requirements");
    if (!a.reasoned_award_opt_out)
        warning("parties have not opted out of a reasoned award; the on-chain record cannot carry reasons, so anchor a reasoned award document instead");
    return out;
}

AwardMetadata metadata_for(const ArbitrationAgreement& a, std::string sig_fragment)
{
    AwardMetadata meta;
    for (std::size_t i = 0; i < all_roles.size(); ++i) {
        const auto* p = a.party(all_roles[i]);
        if (!p)
            throw Error(ErrorCode::InvalidDocument, std::string("agreement has no party with role ") + role_letter(all_roles[i]));
        meta.participants[i] = ParticipantTag{all_roles[i], p->display_name, p->address.suffix(suffix_length)};
    }
    meta.seat = a.seat;
    meta.sig_fragment = std::move(sig_fragment);
    return meta;
}

std::string attest_message_for(const ArbitrationAgreement& a)
{
    return attest_message(metadata_for(a, {}));
}

// ---------------------------------------------------------------------------

bool LinkageReport::overall() const noexcept
{
    return seat_match && std::all_of(parties.begin(), parties.end(), [](const PartyCheck& p) { return p.suffix_match && p.address_in_script; });
}

std::vector<std::string> LinkageReport::failures() const
{
    std::vector<std::string> out;
    for (const auto& p : parties) {
        auto who = std::string(1, role_letter(p.role));
        if (!p.agreement_address) {
            out.push_back("role " + who + " has no party in the agreement");
            continue;
        }
        if (!p.suffix_match)
            out.push_back("role " + who + ": agreement address " + p.agreement_address->text() + " does not end in metadata suffix " + p.metadata_suffix);
        if (!p.address_in_script)
            out.push_back("role " + who + ": agreement address " + p.agreement_address->text() + " is not a key of the escrow script");
    }
    if (!seat_match)
        out.push_back("metadata seat " + metadata.seat + " differs from the agreement seat");
    return out;
}

namespace {

Bytes final_push(const Script& script_sig)
{
    std::vector<ScriptOp> ops;
    try {
        ops = script_sig.ops();
    } catch (const Error&) {
        return {};
    }
    if (ops.empty() || !ops.back().is_push())
        return {};
    return ops.back().data;
}

} // namespace

LinkageReport match_transaction(const ArbitrationAgreement& a, const Transaction& tx)
{
    if (tx.inputs.empty())
        throw Error(ErrorCode::NoRedeemScript, "transaction has no inputs");
    auto redeem = final_push(tx.inputs.front().script_sig);
    if (redeem.empty())
        throw Error(ErrorCode::NoRedeemScript, "first input's scriptSig does not end with a data push");
    for (std::size_t i = 1; i < tx.inputs.size(); ++i)
        if (final_push(tx.inputs[i].script_sig) != redeem)
            throw Error(ErrorCode::NoRedeemScript, "input " + std::to_string(i) + " spends a different redeem script");

    auto net = a.network();
    DecodedScript decoded;
    try {
        decoded = decode_script(Script(redeem), net);
    } catch (const Error& e) {
        throw Error(ErrorCode::NoRedeemScript, std::string("redeem script does not parse: ") + e.what());
    }
    if (decoded.kind != ScriptKind::multisig)
        throw Error(ErrorCode::NoRedeemScript, "final scriptSig push is not a multisig redeem script");

    auto payloads = extract_op_return(tx);
    if (payloads.empty())
        throw Error(ErrorCode::NoMetadata, "transaction has no OP_RETURN output");
    std::optional<AwardMetadata> meta;
    std::string last_error;
    for (const auto& p : payloads) {
        try {
            meta = decode_metadata(p);
            break;
        } catch (const Error& e) {
            last_error = e.what();
        }
    }
    if (!meta)
        throw Error(ErrorCode::MetadataUnparseable, last_error);

    LinkageReport report;
    report.metadata = *meta;
    report.txid = compute_txid(tx);
    report.req_sigs = *decoded.req_sigs;
    report.script_addresses = *decoded.addresses;
    report.redeem_script = RedeemScript{redeem};
    report.seat_match = meta->seat == a.seat;

    for (std::size_t i = 0; i < all_roles.size(); ++i) {
        auto& check = report.parties[i];
        const auto& tag = meta->participants[i];
        check.role = all_roles[i];
        check.metadata_name = tag.display_name;
        check.metadata_suffix = tag.suffix;
        const auto* p = a.party(all_roles[i]);
        if (!p)
            continue;
        check.agreement_address = p->address;
        check.suffix_match = p->address.suffix(suffix_length) == tag.suffix;
        check.address_in_script = std::find(report.script_addresses.begin(), report.script_addresses.end(), p->address) != report.script_addresses.end();
    }
    return report;
}

// ---------------------------------------------------------------------------

AuthenticationCertificate issue_certificate(const ArbitrationAgreement& a, const Transaction& tx,
    const std::optional<TxStatus>& status, const std::vector<SignedMessage>& attestations,
    const std::string& certifier, UtcTime issued_at)
{
    if (certifier.empty())
        throw Error(ErrorCode::InvalidDocument, "a certifier identity is required");

    auto issues = validate_agreement(a);
    if (has_violations(issues)) {
        auto first = std::find_if(issues.begin(), issues.end(), [](const AgreementIssue& i) { return i.severity == AgreementIssue::Severity::violation; });
        throw Error(ErrorCode::LinkageFailed, "agreement is invalid: " + first->message);
    }

    auto linkage = match_transaction(a, tx);
    if (!linkage.overall())
        throw Error(ErrorCode::LinkageFailed, linkage.failures().front());

    const auto& meta = linkage.metadata;
    auto expected_message = attest_message(meta);
    std::vector<VerifiedAttestation> verified;
    bool have_arbitrator = false;
    for (const auto& sm : attestations) {
        bool ok = false;
        try {
            ok = verify_message(sm);
        } catch (const Error& e) {
            throw Error(ErrorCode::AttestationInvalid, "attestation from " + sm.address.text() + " is malformed: " + e.what());
        }
        if (!ok)
            throw Error(ErrorCode::AttestationInvalid, "attestation from " + sm.address.text() + " does not verify");
        const auto* party = a.party_by_address(sm.address);
        if (!party)
            throw Error(ErrorCode::AttestationInvalid, "attestation signer " + sm.address.text() + " is not a party");

        VerifiedAttestation va{sm, party->role, false};
        if (party->role == Role::arbitrator) {
            if (sm.message != expected_message)
                throw Error(ErrorCode::AttestationInvalid, "arbitrator attestation signs \"" + sm.message + "\", not the on-chain line \"" + expected_message + "\"");
            va.fragment_match = match_fragment(sm.signature_b64, meta.sig_fragment);
            if (!va.fragment_match)
                throw Error(ErrorCode::AttestationInvalid, "on-chain fragment " + meta.sig_fragment + " is not the tail of the arbitrator's signature");
            have_arbitrator = true;
        }
        verified.push_back(std::move(va));
    }
    if (!have_arbitrator)
        throw Error(ErrorCode::MissingArbitratorAttestation, "no verified attestation from the arbitrator's address " + a.party(Role::arbitrator)->address.text());

    if (!status || status->confirmations == 0 || !status->block_time)
        throw Error(ErrorCode::NoTimeEvidence, "transaction " + linkage.txid.hex() + " has no confirmed block time");

    AuthenticationCertificate cert;
    cert.txid_ = linkage.txid;
    cert.amount_ = total_output_value(tx);
    cert.time_ = TimeEvidence{*status->block_time, status->confirmations, status->block_hash};
    cert.intent_ = IntentEvidence{a.agreement_text_hash, a.reasoned_award_opt_out, expected_message, a.seat, a.seat_jurisdiction};
    cert.certifier_ = certifier;
    cert.issued_at_ = issued_at;

    auto& f = cert.findings_;
    f.push_back("Transaction id " + cert.txid_.hex() + " was completed on " + format_long_utc(cert.time_.block_time));
    f.push_back("The transaction amount was " + format_btc(cert.amount_) + " BTC");
    for (const auto& check : linkage.parties) {
        const auto& tag = meta.participant(check.role);
        f.push_back("\"" + std::string(1, role_letter(check.role)) + "-" + tag.display_name + "-" + tag.suffix + "\" relates to " + check.agreement_address->text());
    }
    f.push_back("The transaction makes reference to " + meta.seat + ".");
    for (const auto& va : verified) {
        const auto* p = a.party_by_address(va.signed_message.address);
        if (va.role == Role::arbitrator)
            f.push_back(p->legal_name + "'s wallet digitally signed the embedded data.");
        else
            f.push_back(p->legal_name + "'s wallet signed a message attesting control of " + p->address.text() + ".");
    }
    f.push_back("The record is unaltered given the number of confirmations (" + std::to_string(cert.time_.confirmations) + ").");

    cert.caveats_.push_back("Block time is the block header timestamp reported by the chain source; header times may deviate from median-time-past by up to about two hours.");
    cert.caveats_.push_back("This certificate assembles evidence of origin, time and intent; it does not decide whether the award is recognisable.");
    for (const auto& issue : issues)
        cert.caveats_.push_back("Agreement warning: " + issue.message);

    cert.linkage_ = std::move(linkage);
    cert.attestations_ = std::move(verified);
    return cert;
}

std::string AuthenticationCertificate::statement() const
{
    std::ostringstream s;
    s << "AUTHENTICATION CERTIFICATE\n"
      << "Transaction: " << txid_.hex() << "\n"
      << "Certifier:   " << certifier_ << "\n"
      << "Issued at:   " << format_iso8601(issued_at_) << "\n\n";

    s << "(i) Origin. The escrow script requires " << linkage_.req_sigs << " of " << linkage_.script_addresses.size()
      << " keys (";
    for (std::size_t i = 0; i < linkage_.script_addresses.size(); ++i)
        s << (i ? ", " : "") << linkage_.script_addresses[i].text();
    s << "). Each party's agreed address appears in the script and its last " << suffix_length
      << " characters match the on-chain tag.";
    for (const auto& va : attestations_)
        s << " A signed message from " << va.signed_message.address.text() << " (" << role_name(va.role) << ") verifies.";
    s << "\n";

    s << "(ii) Time. The transaction was included in a block timestamped " << format_iso8601(time_.block_time) << " and has "
      << time_.confirmations << " confirmation" << (time_.confirmations == 1 ? "" : "s");
    if (time_.block_hash)
        s << " (block " << *time_.block_hash << ")";
    s << ".\n";

    s << "(iii) Intent. The arbitrator signed \"" << intent_.attest_message << "\" for a seat in " << intent_.seat << " ("
      << to_string(intent_.seat_jurisdiction) << "); reasoned award opt-out: " << (intent_.reasoned_award_opt_out ? "yes" : "no");
    if (intent_.agreement_text_hash)
        s << "; agreement text sha256 " << intent_.agreement_text_hash->hex();
    s << ".\n\nFindings:\n";
    for (const auto& f : findings_)
        s << "- " << f << "\n";
    s << "\nCaveats:\n";
    for (const auto& c : caveats_)
        s << "- " << c << "\n";
    return s.str();
}

} // namespace eaward
