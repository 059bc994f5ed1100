#include "support.hpp"
#include "vectors.hpp"

#include <eaward/attestation.hpp>
#include <eaward/chain.hpp>
#include <eaward/escrow.hpp>
#include <eaward/message.hpp>
#include <eaward/script.hpp>
#include <eaward/json_io.hpp>

#include <algorithm>

using namespace eaward;

namespace {

ArbitrationAgreement worked_agreement()
{
    return agreement_from_json(load_json_file(vectors::fixture_dir() / "worked_example" / "agreement.json"));
}

ChainClient fixtures()
{
    return ChainClient(ChainSource::fixture(vectors::fixture_dir() / "chain"));
}

Transaction escrow_tx()
{
    return parse_transaction(fixtures().get_raw_transaction(Txid::from_hex(vectors::escrow_txid)));
}

std::optional<TxStatus> escrow_status()
{
    return fixtures().get_tx_status(Txid::from_hex(vectors::escrow_txid));
}

SignedMessage arbitrator_attestation()
{
    return {Address::parse(vectors::addr_a), std::string(vectors::attest_message), std::string(vectors::signature)};
}

UtcTime issued()
{
    return parse_iso8601("2019-04-01T09:00:00Z");
}

// rewrites the OP_RETURN payload in place
Transaction with_payload(Transaction tx, const Bytes& payload)
{
    tx.outputs[0].script_pubkey = make_nulldata_script(payload);
    return tx;
}

} // namespace

TEST(Agreement, WorkedExampleIsValid)
{
    auto a = worked_agreement();
    auto issues = validate_agreement(a);
    EXPECT_FALSE(has_violations(issues));
    EXPECT_TRUE(issues.empty());
    EXPECT_EQ(attest_message_for(a), vectors::attest_message);
    EXPECT_EQ(to_hex(encode_metadata(metadata_for(a, std::string(vectors::fragment)))), vectors::payload_hex);
    EXPECT_EQ(a.network(), Network::testnet);
}

TEST(Agreement, JsonRoundTrip)
{
    auto a = worked_agreement();
    auto j = to_json(a);
    auto b = agreement_from_json(j);
    EXPECT_EQ(to_json(b), j);
}

TEST(Agreement, Violations)
{
    auto a = worked_agreement();
    a.seat = "New York";
    EXPECT_TRUE(has_violations(validate_agreement(a)));

    a = worked_agreement();
    a.parties[1].address = a.parties[0].address;
    EXPECT_TRUE(has_violations(validate_agreement(a)));

    a = worked_agreement();
    a.parties.pop_back();
    EXPECT_TRUE(has_violations(validate_agreement(a)));

    a = worked_agreement();
    a.parties[2].address = Address::parse(vectors::p2sh_testnet);
    EXPECT_TRUE(has_violations(validate_agreement(a)));

    a = worked_agreement();
    std::swap(a.policy.pubkeys[0], a.policy.pubkeys[1]);
    EXPECT_FALSE(has_violations(validate_agreement(a))) << "key order does not matter for membership";
    a.policy.pubkeys[2] = support::random_key().public_key();
    EXPECT_TRUE(has_violations(validate_agreement(a)));

    a = worked_agreement();
    a.parties[0].display_name = "JohnSmithTheVeryLongNamedArbitratorOfLondon";
    EXPECT_TRUE(has_violations(validate_agreement(a)));
}

TEST(Agreement, Warnings)
{
    auto a = worked_agreement();
    a.seat_jurisdiction = SeatJurisdiction::other;
    a.reasoned_award_opt_out = false;
    auto issues = validate_agreement(a);
    EXPECT_FALSE(has_violations(issues));
    EXPECT_EQ(issues.size(), 2u);
}

TEST(Agreement, JsonErrors)
{
    auto j = to_json(worked_agreement());
    j.erase("seat");
    EXPECT_EAWARD_ERROR(agreement_from_json(j), ErrorCode::InvalidDocument);
    j = to_json(worked_agreement());
    j["parties"][0]["address"] = "not-an-address";
    EXPECT_EAWARD_ERROR(agreement_from_json(j), ErrorCode::InvalidDocument);
    j = to_json(worked_agreement());
    j["parties"][0]["role"] = "Q";
    EXPECT_EAWARD_ERROR(agreement_from_json(j), ErrorCode::InvalidDocument);
}

TEST(Linkage, WorkedExampleMatches)
{
    auto report = match_transaction(worked_agreement(), escrow_tx());
    EXPECT_TRUE(report.overall()) << (report.failures().empty() ? "" : report.failures().front());
    EXPECT_EQ(report.req_sigs, 2);
    EXPECT_EQ(report.redeem_script.hex(), vectors::redeem_hex);
    EXPECT_EQ(report.txid.hex(), vectors::escrow_txid);
    for (const auto& p : report.parties) {
        EXPECT_TRUE(p.suffix_match);
        EXPECT_TRUE(p.address_in_script);
    }
}

TEST(Linkage, SwappedAddressesFail)
{
    auto a = worked_agreement();
    std::swap(a.parties[0].address, a.parties[1].address);
    auto report = match_transaction(a, escrow_tx());
    EXPECT_FALSE(report.overall());
    EXPECT_FALSE(report.parties[0].suffix_match);
    EXPECT_TRUE(report.parties[0].address_in_script);
    EXPECT_EQ(report.failures().size(), 2u);
}

TEST(Linkage, MissingPieces)
{
    auto a = worked_agreement();
    auto tx = escrow_tx();
    auto no_meta = tx;
    no_meta.outputs[0].script_pubkey = Script::from_hex("51");
    EXPECT_EAWARD_ERROR(match_transaction(a, no_meta), ErrorCode::NoMetadata);
    EXPECT_EAWARD_ERROR(match_transaction(a, with_payload(tx, Bytes(10, 'x'))), ErrorCode::MetadataUnparseable);
    auto no_redeem = tx;
    no_redeem.inputs[0].script_sig = Script();
    EXPECT_EAWARD_ERROR(match_transaction(a, no_redeem), ErrorCode::NoRedeemScript);
    auto p2pkh_spend = tx;
    p2pkh_spend.inputs[0].script_sig = Script().push_data(Bytes(71, 1)).push_data(from_hex(vectors::key_a));
    EXPECT_EAWARD_ERROR(match_transaction(a, p2pkh_spend), ErrorCode::NoRedeemScript);
}

TEST(Certificate, WorkedExample)
{
    auto cert = issue_certificate(worked_agreement(), escrow_tx(), escrow_status(), {arbitrator_attestation()},
        "Registry Clerk", issued());
    const auto& f = cert.findings();
    ASSERT_GE(f.size(), 8u);
    EXPECT_EQ(f[0], "Transaction id " + std::string(vectors::escrow_txid) + " was completed on 28 March 2019 at 15:46:53 UTC");
    EXPECT_EQ(f[1], "The transaction amount was 0.00500000 BTC");
    EXPECT_EQ(f[2], "\"A-JohnSmith-KkjJX\" relates to mzV1dsMdDjtLSfRa2rPrE2oJpRtynKkjJX");
    EXPECT_EQ(f[3], "\"C-Acme-fZN8L\" relates to mpGZniUmoCemQzRbazvdgzGkmjUQ3fZN8L");
    EXPECT_EQ(f[4], "\"R-Baker-NBSvH\" relates to n2dSPmt5cv2hFNfQqoZtvRJ6bZmypNBSvH");
    EXPECT_EQ(f[5], "The transaction makes reference to London.");
    EXPECT_EQ(f[6], "John Smith's wallet digitally signed the embedded data.");
    EXPECT_EQ(f.back(), "The record is unaltered given the number of confirmations (100).");
    EXPECT_EQ(cert.amount_satoshi(), 500000u);
    EXPECT_EQ(cert.intent_evidence().attest_message, vectors::attest_message);
    EXPECT_TRUE(cert.attestations().front().fragment_match);
    auto text = cert.statement();
    EXPECT_NE(text.find("Registry Clerk"), std::string::npos);
    EXPECT_NE(text.find("Caveats"), std::string::npos);
    auto j = to_json(cert);
    EXPECT_EQ(j["txid"], vectors::escrow_txid);
}

namespace {

struct Scenario {
    std::vector<PrivateKey> keys;
    ArbitrationAgreement agreement;
    Transaction tx;
    std::string a_signature;
};

Scenario random_scenario()
{
    Scenario s;
    for (int i = 0; i < 3; ++i) s.keys.push_back(support::random_key());
    auto& a = s.agreement;
    a.seat = support::random_string(support::uniform(3, 6), support::alnum);
    a.seat_jurisdiction = SeatJurisdiction::switzerland;
    a.reasoned_award_opt_out = true;
    a.policy.m = 2;
    for (std::size_t i = 0; i < 3; ++i) {
        auto pub = s.keys[i].public_key();
        a.policy.pubkeys.push_back(pub);
        auto name = support::random_string(support::uniform(1, 5), support::alnum);
        a.parties.push_back({all_roles[i], name + " Ltd", name, pubkey_to_address(pub, Network::testnet)});
    }
    auto sm = sign_message(s.keys[0], attest_message_for(a), Network::testnet);
    s.a_signature = sm.signature_b64;

    TxInput in;
    in.prev_txid.hash = Digest256::from_bytes(support::random_bytes(32));
    in.script_sig = Script()
                        .push_opcode(op::zero)
                        .push_data(support::random_bytes(71))
                        .push_data(support::random_bytes(71))
                        .push_data(build_redeem_script(a.policy).bytes);
    s.tx.inputs.push_back(in);
    auto payload = encode_metadata(metadata_for(a, signature_fragment(s.a_signature)));
    s.tx.outputs.push_back({support::uniform(1, 100000000), make_nulldata_script(payload)});
    return s;
}

} // namespace

TEST(Certificate, SynthesizedScenariosProperty)
{
    for (int i = 0; i < 100; ++i) {
        auto s = random_scenario();
        const auto& a = s.agreement;
        TxStatus st{from_unix(1500000000 + static_cast<std::int64_t>(i)), static_cast<std::uint32_t>(support::uniform(1, 1000)), std::nullopt};
        SignedMessage att_a{a.parties[0].address, attest_message_for(a), s.a_signature};
        auto att_c = sign_message(s.keys[1], "control of escrow key", Network::testnet);
        auto cert = issue_certificate(a, s.tx, st, {att_a, att_c}, "clerk", issued());
        ASSERT_EQ(cert.attestations().size(), 2u);
        ASSERT_EQ(cert.attestations()[1].role, Role::claimant);
        ASSERT_EQ(cert.amount_satoshi(), s.tx.outputs[0].value);
        auto& f = cert.findings();
        ASSERT_NE(std::find(f.begin(), f.end(),
                      a.parties[1].legal_name + "'s wallet signed a message attesting control of " + a.parties[1].address.text() + "."),
            f.end());

        auto stranger = sign_message(support::random_key(), "control of escrow key", Network::testnet);
        EXPECT_EAWARD_ERROR(issue_certificate(a, s.tx, st, {att_a, stranger}, "clerk", issued()),
            ErrorCode::AttestationInvalid);
        EXPECT_EAWARD_ERROR(issue_certificate(a, s.tx, st, {att_c}, "clerk", issued()),
            ErrorCode::MissingArbitratorAttestation);
    }
}

TEST(Certificate, SingleFaultsAreDetected)
{
    auto a = worked_agreement();
    auto tx = escrow_tx();
    auto st = escrow_status();
    auto att = arbitrator_attestation();

    EXPECT_EAWARD_ERROR(issue_certificate(a, tx, st, {att}, "", issued()), ErrorCode::InvalidDocument);

    auto wrong_seat = a;
    wrong_seat.seat = "Paris";
    EXPECT_EAWARD_ERROR(issue_certificate(wrong_seat, tx, st, {att}, "clerk", issued()), ErrorCode::LinkageFailed);

    EXPECT_EAWARD_ERROR(issue_certificate(a, tx, st, {}, "clerk", issued()), ErrorCode::MissingArbitratorAttestation);

    auto bad_sig = att;
    bad_sig.signature_b64[10] = bad_sig.signature_b64[10] == 'A' ? 'B' : 'A';
    EXPECT_EAWARD_ERROR(issue_certificate(a, tx, st, {bad_sig}, "clerk", issued()), ErrorCode::AttestationInvalid);

    auto other_msg = att;
    other_msg.message = "A-JohnSmith-KkjJX C-Acme-fZN8L R-Baker-NBSvH Paris";
    EXPECT_EAWARD_ERROR(issue_certificate(a, tx, st, {other_msg}, "clerk", issued()), ErrorCode::AttestationInvalid);

    auto meta = decode_metadata(from_hex(vectors::payload_hex));
    meta.sig_fragment[0] = 'D';
    EXPECT_EAWARD_ERROR(issue_certificate(a, with_payload(tx, encode_metadata(meta)), st, {att}, "clerk", issued()),
        ErrorCode::AttestationInvalid);

    EXPECT_EAWARD_ERROR(issue_certificate(a, tx, std::nullopt, {att}, "clerk", issued()), ErrorCode::NoTimeEvidence);
    EXPECT_EAWARD_ERROR(issue_certificate(a, tx, TxStatus{}, {att}, "clerk", issued()), ErrorCode::NoTimeEvidence);
}

TEST(Certificate, RandomPayloadMutationsNeverCertifyProperty)
{
    auto a = worked_agreement();
    auto tx = escrow_tx();
    auto st = escrow_status();
    auto base = from_hex(vectors::payload_hex);
    for (int i = 0; i < support::property_cases; ++i) {
        auto payload = base;
        auto pos = support::uniform(0, payload.size() - 1);
        auto c = payload[pos];
        while (c == payload[pos]) c = static_cast<std::uint8_t>(support::uniform(0x21, 0x7e));
        payload[pos] = c;
        try {
            issue_certificate(a, with_payload(tx, payload), st, {arbitrator_attestation()}, "clerk", issued());
            FAIL() << "mutated payload certified: " << std::string(payload.begin(), payload.end());
        } catch (const Error&) {
        }
    }
}
